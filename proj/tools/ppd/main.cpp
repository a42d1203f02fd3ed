/* main.cpp -- the ppd command line: run machines, decide words, verify groups. */

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "ppd/machine_io.hpp"
#include "ppd/pstructure.hpp"
#include "ppd/registry.hpp"

namespace {

using namespace ppd;

// Whitespace-separated letter names; a token that is not itself a letter is
// split into single-character letters when possible (so "aabbcc" works for
// one-character alphabets).
Word parse_cli_word(const Alphabet& a, const std::string& text) {
    Word out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        Symbol s = Symbol::intern(tok);
        if (a.contains(s)) {
            out.push_back(s);
            continue;
        }
        for (char c : tok) {
            Symbol cs = Symbol::intern(std::string(1, c));
            if (!a.contains(cs))
                throw CLI::ValidationError("word", "unknown letter '" + tok +
                                                       "'");
            out.push_back(cs);
        }
    }
    return out;
}

Alphabet dpda_letter_alphabet(const Dpda& m) { return m.input; }

int run_dpda_cmd(const std::string& file, const std::string& word, bool trace) {
    Dpda m = load_dpda_file(file);
    Word w = parse_cli_word(dpda_letter_alphabet(m), word);
    DpdaCursor::TraceFn fn = nullptr;
    if (trace)
        fn = [&m](const InstantaneousDescription& id) {
            std::cout << "trace " << id.str(m) << "\n";
        };
    RunReport r = run(m, w, {}, fn);
    std::cout << "verdict " << (r.accepted ? "true" : "false") << "\n";
    std::cout << "steps " << r.steps << "\n";
    return 0;
}

int member_cmd(const std::string& manifest, const std::string& word) {
    PplLanguage L = load_ppl_bundle(manifest);
    Word w = parse_cli_word(L.alphabet, word);
    MemberReport r = member_report(L, w);
    std::cout << "verdict " << (r.accepted ? "true" : "false") << "\n";
    std::cout << "steps " << r.steps << "\n";
    return 0;
}

int check_pair_cmd(const std::string& manifest, const std::string& left,
                   const std::string& right) {
    AtpplRelation r = load_atppl_bundle(manifest);
    Word u = parse_cli_word(r.left_alphabet, left);
    Word v = parse_cli_word(r.right_alphabet, right);
    bool ok = relation_member(r, u, v);
    std::cout << "verdict " << (ok ? "true" : "false") << "\n";
    return 0;
}

int wordproblem_cmd(const std::string& id, const std::string& word,
                    long max_len, bool use_enumeration) {
    PStructure s = shipped_structure(id);
    Word w = parse_cli_word(s.alphabet, word);
    WordProblemOptions opts;
    opts.use_enumeration = use_enumeration;
    if (max_len >= 0) {
        opts.ceiling_factor = 0;
        opts.ceiling_offset = static_cast<size_t>(max_len);
    }
    bool ok = word_problem(s, w, opts);
    std::cout << "verdict " << (ok ? "true" : "false") << "\n";
    return 0;
}

int verify_cmd(const std::string& id, int radius) {
    PStructure s = shipped_structure(id);
    if (radius < 0) radius = shipped_structure_radius(id);
    CheckReport r = check_structure(s, radius);
    std::cout << "group " << id << " radius " << radius << "\n";
    std::cout << "ball " << r.ball_size << "\n";
    std::cout << "language-words " << r.language_words << "\n";
    std::cout << "multiplier-checks " << r.multiplier_checks << "\n";
    std::cout << "issues " << r.issues.size() << "\n";
    for (const auto& i : r.issues) std::cout << "issue " << i << "\n";
    std::cout << "result " << (r.ok() ? "pass" : "fail") << "\n";
    return 0;
}

int build_cmd(const std::string& id, const std::string& out_dir) {
    namespace fs = std::filesystem;
    if (id == "abc") {
        std::string path = save_ppl_bundle(out_dir, aibici_language());
        std::cout << "wrote " << path << "\n";
        return 0;
    }
    PStructure s = shipped_structure(id);
    fs::create_directories(out_dir);
    BundleManifest m;
    m.kind = BundleManifest::Kind::PStructure;
    m.name = s.name;
    m.group_id = id;
    for (size_t i = 0; i < s.alphabet.size(); ++i)
        m.alphabet.push_back(s.alphabet.at(i).name());
    for (size_t i = 0; i < s.language.machines.size(); ++i) {
        std::string f = "nf-" + std::to_string(i) + ".dpda";
        save_dpda_file((fs::path(out_dir) / f).string(),
                       s.language.machines[i]);
        m.files.push_back(f);
    }
    std::string manifest = (fs::path(out_dir) / "manifest.ppd").string();
    save_manifest(manifest, m);
    std::cout << "wrote " << manifest << "\n";
    for (const auto& [letter, rel] : s.multipliers) {
        std::string sub =
            (fs::path(out_dir) / ("mul-" + letter.name())).string();
        std::cout << "wrote " << save_atppl_bundle(sub, rel) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parallel poly-pushdown machines, languages, and P-structures"};
    app.require_subcommand(1);

    std::string file, word, left, right, id, out_dir = "bundle-out";
    bool trace = false, use_enumeration = false;
    long max_len = -1;
    int radius = -1;

    auto* rd = app.add_subcommand("run-dpda", "run one machine on a word");
    rd->add_option("machine", file, "machine file")->required();
    rd->add_option("--word", word, "input word")->required();
    rd->add_flag("--trace", trace, "print instantaneous descriptions");

    auto* mem = app.add_subcommand("member", "language membership via a bundle");
    mem->add_option("bundle", file, "bundle manifest")->required();
    mem->add_option("--word", word, "input word")->required();

    auto* cp = app.add_subcommand("check-pair", "pair relation via a bundle");
    cp->add_option("bundle", file, "bundle manifest")->required();
    cp->add_option("--left", left, "left word")->required();
    cp->add_option("--right", right, "right word")->required();

    auto* wp = app.add_subcommand("wordproblem", "decide w = 1 in a group");
    wp->add_option("group", id, "group id")->required();
    wp->add_option("--word", word, "input word")->required();
    wp->add_option("--max-len", max_len, "successor length ceiling");
    wp->add_flag("--enumerate", use_enumeration,
                 "pure enumerate-and-test procedure");

    auto* vf = app.add_subcommand("verify", "check structure conditions 1-3");
    vf->add_option("group", id, "group id")->required();
    vf->add_option("--radius", radius, "ball radius (default per group)");

    auto* bd = app.add_subcommand("build", "export a bundle for a group id");
    bd->add_option("group", id, "group id (or 'abc')")->required();
    bd->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (rd->parsed()) return run_dpda_cmd(file, word, trace);
        if (mem->parsed()) return member_cmd(file, word);
        if (cp->parsed()) return check_pair_cmd(file, left, right);
        if (wp->parsed())
            return wordproblem_cmd(id, word, max_len, use_enumeration);
        if (vf->parsed()) return verify_cmd(id, radius);
        if (bd->parsed()) return build_cmd(id, out_dir);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ppd::DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return 3;
    } catch (const ppd::BoundExhausted& e) {
        std::cerr << "bound exhausted: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
