/* machine_io.cpp -- reading and writing the machine and bundle text formats. */

#include "ppd/machine_io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ppd {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) {
        if (t[0] == '#') break;
        out.push_back(t);
    }
    return out;
}

// Next non-empty, non-comment line split into tokens.
std::vector<std::string> next_record(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        auto t = tokens(line);
        if (!t.empty()) return t;
    }
    return {};
}

void expect_header(std::istream& in, const std::string& magic) {
    auto t = next_record(in);
    if (t.size() != 2 || t[0] != magic || t[1] != "1")
        throw IoError("expected '" + magic + " 1' header");
}

int to_int(const std::string& s) {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw IoError("bad integer: " + s);
    return v;
}

Alphabet read_alphabet(const std::vector<std::string>& t, size_t from) {
    std::vector<Symbol> syms;
    for (size_t i = from; i < t.size(); ++i) syms.push_back(Symbol::intern(t[i]));
    return Alphabet(syms);
}

void write_dpda_body(std::ostream& out, const Dpda& m, bool with_input) {
    out << "name " << m.name << "\n";
    out << "mode " << (m.mode == AcceptMode::FinalState ? "final" : "empty")
        << "\n";
    if (with_input) {
        out << "input";
        for (size_t i = 0; i < m.input.size(); ++i)
            out << " " << m.input.at(i).name();
        out << "\n";
    }
    out << "stack";
    for (Symbol s : m.stack_syms) out << " " << s.name();
    out << "\n";
    out << "start " << m.start_state << " " << m.start_symbol << "\n";
    out << "sink " << m.sink << "\n";
    for (int s = 0; s < m.num_states(); ++s)
        out << "state " << s << " " << (m.accepting[static_cast<size_t>(s)] ? 1 : 0)
            << " " << m.state_names[static_cast<size_t>(s)] << "\n";
    for (int s = 0; s < m.num_states(); ++s)
        for (size_t b = 0; b < m.stack_syms.size(); ++b) {
            const Dpda::Cell& c = m.cell(s, static_cast<int>(b));
            auto write_rule = [&](const std::string& trigger, const DpdaRule& r) {
                out << "rule " << s << " " << b << " " << trigger << " "
                    << r.next_state;
                for (int p : r.push) out << " " << p;
                out << "\n";
            };
            if (c.eps) write_rule("eps", *c.eps);
            for (size_t li = 0; li < c.letter.size(); ++li)
                if (c.letter[li]) write_rule(std::to_string(li), *c.letter[li]);
        }
    out << "end\n";
}

// Reads the body up to "end".  If `input` is set it overrides any input line
// (the two-tape case, where the tagged alphabet is rebuilt by the caller).
Dpda read_dpda_body(std::istream& in, const Alphabet* input) {
    Dpda m;
    bool have_input = input != nullptr;
    if (input) m.input = *input;
    std::vector<std::tuple<int, int, std::string, DpdaRule>> rules;
    int max_state = -1;
    for (;;) {
        auto t = next_record(in);
        if (t.empty()) throw IoError("unterminated machine body");
        if (t[0] == "end") break;
        if (t[0] == "name") {
            m.name = t.size() > 1 ? t[1] : "";
            for (size_t i = 2; i < t.size(); ++i) m.name += " " + t[i];
        } else if (t[0] == "mode") {
            m.mode = t.at(1) == "final" ? AcceptMode::FinalState
                                        : AcceptMode::EmptyStack;
        } else if (t[0] == "input") {
            if (!input) {
                m.input = read_alphabet(t, 1);
                have_input = true;
            }
        } else if (t[0] == "stack") {
            for (size_t i = 1; i < t.size(); ++i)
                m.stack_syms.push_back(Symbol::intern(t[i]));
        } else if (t[0] == "start") {
            m.start_state = to_int(t.at(1));
            m.start_symbol = to_int(t.at(2));
        } else if (t[0] == "sink") {
            m.sink = to_int(t.at(1));
        } else if (t[0] == "state") {
            int idx = to_int(t.at(1));
            if (idx != ++max_state) throw IoError("states out of order");
            m.accepting.push_back(to_int(t.at(2)) != 0);
            std::string nm = t.size() > 3 ? t[3] : "";
            for (size_t i = 4; i < t.size(); ++i) nm += " " + t[i];
            m.state_names.push_back(nm);
        } else if (t[0] == "rule") {
            DpdaRule r;
            r.next_state = to_int(t.at(4));
            for (size_t i = 5; i < t.size(); ++i) r.push.push_back(to_int(t[i]));
            rules.emplace_back(to_int(t.at(1)), to_int(t.at(2)), t.at(3), r);
        } else {
            throw IoError("unknown record: " + t[0]);
        }
    }
    if (!have_input) throw IoError("machine body lacks an input alphabet");
    if (m.stack_syms.empty()) throw IoError("machine body lacks stack symbols");
    m.cells.assign(static_cast<size_t>(m.num_states()) * m.stack_syms.size(), {});
    for (auto& c : m.cells) c.letter.resize(m.input.size());
    for (const auto& [s, b, trigger, r] : rules) {
        if (s < 0 || s >= m.num_states() || b < 0 ||
            b >= static_cast<int>(m.stack_syms.size()))
            throw IoError("rule outside the machine");
        if (trigger == "eps")
            m.cell(s, b).eps = r;
        else
            m.cell(s, b).letter.at(static_cast<size_t>(to_int(trigger))) = r;
    }
    return m;
}

std::string kind_name(BundleManifest::Kind k) {
    switch (k) {
        case BundleManifest::Kind::Dpda: return "dpda";
        case BundleManifest::Kind::Ppl: return "ppl";
        case BundleManifest::Kind::Atppl: return "atppl";
        case BundleManifest::Kind::PStructure: return "pstructure";
    }
    throw IoError("bad bundle kind");
}

BundleManifest::Kind kind_of(const std::string& s) {
    if (s == "dpda") return BundleManifest::Kind::Dpda;
    if (s == "ppl") return BundleManifest::Kind::Ppl;
    if (s == "atppl") return BundleManifest::Kind::Atppl;
    if (s == "pstructure") return BundleManifest::Kind::PStructure;
    throw IoError("unknown bundle kind: " + s);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    return in;
}

std::string sanitized(const std::string& name) {
    std::string out;
    for (char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                c == '_' || c == '.')
                   ? c
                   : '_';
    return out.empty() ? "machine" : out;
}

}  // namespace

void save_dpda(std::ostream& out, const Dpda& m) {
    out << "ppd-dpda 1\n";
    write_dpda_body(out, m, true);
}

Dpda load_dpda(std::istream& in) {
    expect_header(in, "ppd-dpda");
    return read_dpda_body(in, nullptr);
}

void save_dpda_file(const std::string& path, const Dpda& m) {
    auto out = open_out(path);
    save_dpda(out, m);
}

Dpda load_dpda_file(const std::string& path) {
    auto in = open_in(path);
    return load_dpda(in);
}

void save_two_tape(std::ostream& out, const TwoTapePda& m) {
    out << "ppd-atp 1\n";
    out << "left";
    for (size_t i = 0; i < m.left_alphabet.size(); ++i)
        out << " " << m.left_alphabet.at(i).name();
    out << "\n";
    out << "right";
    for (size_t i = 0; i < m.right_alphabet.size(); ++i)
        out << " " << m.right_alphabet.at(i).name();
    out << "\n";
    out << "sides";
    for (Side s : m.side) out << " " << (s == Side::Left ? "L" : "R");
    out << "\n";
    write_dpda_body(out, m.machine, false);
}

TwoTapePda load_two_tape(std::istream& in) {
    expect_header(in, "ppd-atp");
    TwoTapePda m;
    auto left = next_record(in);
    if (left.empty() || left[0] != "left") throw IoError("expected left alphabet");
    m.left_alphabet = read_alphabet(left, 1);
    auto right = next_record(in);
    if (right.empty() || right[0] != "right")
        throw IoError("expected right alphabet");
    m.right_alphabet = read_alphabet(right, 1);
    auto sides = next_record(in);
    if (sides.empty() || sides[0] != "sides") throw IoError("expected sides");
    for (size_t i = 1; i < sides.size(); ++i)
        m.side.push_back(sides[i] == "L" ? Side::Left : Side::Right);
    Alphabet input = two_tape_alphabet(m.left_alphabet, m.right_alphabet);
    m.machine = read_dpda_body(in, &input);
    if (m.side.size() != static_cast<size_t>(m.machine.num_states()))
        throw IoError("side list does not match the state count");
    return m;
}

void save_two_tape_file(const std::string& path, const TwoTapePda& m) {
    auto out = open_out(path);
    save_two_tape(out, m);
}

TwoTapePda load_two_tape_file(const std::string& path) {
    auto in = open_in(path);
    return load_two_tape(in);
}

BundleManifest load_manifest(const std::string& path) {
    auto in = open_in(path);
    expect_header(in, "ppd-bundle");
    BundleManifest m;
    for (;;) {
        auto t = next_record(in);
        if (t.empty()) break;
        if (t[0] == "kind")
            m.kind = kind_of(t.at(1));
        else if (t[0] == "name")
            m.name = t.at(1);
        else if (t[0] == "alphabet")
            m.alphabet.assign(t.begin() + 1, t.end());
        else if (t[0] == "machine")
            m.files.push_back(t.at(1));
        else if (t[0] == "group")
            m.group_id = t.at(1);
        else
            throw IoError("unknown manifest record: " + t[0]);
    }
    if (m.files.empty() && m.kind != BundleManifest::Kind::PStructure)
        throw IoError("manifest lists no machines");
    return m;
}

void save_manifest(const std::string& path, const BundleManifest& m) {
    auto out = open_out(path);
    out << "ppd-bundle 1\n";
    out << "kind " << kind_name(m.kind) << "\n";
    if (!m.name.empty()) out << "name " << m.name << "\n";
    if (!m.alphabet.empty()) {
        out << "alphabet";
        for (const auto& a : m.alphabet) out << " " << a;
        out << "\n";
    }
    for (const auto& f : m.files) out << "machine " << f << "\n";
    if (!m.group_id.empty()) out << "group " << m.group_id << "\n";
}

PplLanguage load_ppl_bundle(const std::string& manifest_path) {
    BundleManifest m = load_manifest(manifest_path);
    if (m.kind == BundleManifest::Kind::Atppl)
        throw IoError("not a language bundle: " + manifest_path);
    fs::path dir = fs::path(manifest_path).parent_path();
    std::vector<Dpda> machines;
    for (const auto& f : m.files)
        machines.push_back(load_dpda_file((dir / f).string()));
    for (const auto& mm : machines)
        for (const auto& a : m.alphabet)
            if (!mm.input.contains(Symbol::intern(a)))
                throw IoError("machine " + mm.name +
                              " misses declared letter " + a);
    return make_language(m.name.empty() ? "bundle" : m.name,
                         std::move(machines));
}

AtpplRelation load_atppl_bundle(const std::string& manifest_path) {
    BundleManifest m = load_manifest(manifest_path);
    if (m.kind != BundleManifest::Kind::Atppl)
        throw IoError("not a relation bundle: " + manifest_path);
    fs::path dir = fs::path(manifest_path).parent_path();
    std::vector<TwoTapePda> machines;
    for (const auto& f : m.files)
        machines.push_back(load_two_tape_file((dir / f).string()));
    return make_relation(m.name.empty() ? "bundle" : m.name,
                         std::move(machines));
}

std::string save_ppl_bundle(const std::string& dir, const PplLanguage& L) {
    fs::create_directories(dir);
    BundleManifest m;
    m.kind = BundleManifest::Kind::Ppl;
    m.name = L.name;
    for (size_t i = 0; i < L.alphabet.size(); ++i)
        m.alphabet.push_back(L.alphabet.at(i).name());
    for (size_t i = 0; i < L.machines.size(); ++i) {
        std::string f =
            sanitized(L.machines[i].name) + "-" + std::to_string(i) + ".dpda";
        save_dpda_file((fs::path(dir) / f).string(), L.machines[i]);
        m.files.push_back(f);
    }
    std::string path = (fs::path(dir) / "manifest.ppd").string();
    save_manifest(path, m);
    return path;
}

std::string save_atppl_bundle(const std::string& dir, const AtpplRelation& r) {
    fs::create_directories(dir);
    BundleManifest m;
    m.kind = BundleManifest::Kind::Atppl;
    m.name = r.name;
    for (size_t i = 0; i < r.machines.size(); ++i) {
        std::string f =
            sanitized(r.machines[i].machine.name) + "-" + std::to_string(i) +
            ".atp";
        save_two_tape_file((fs::path(dir) / f).string(), r.machines[i]);
        m.files.push_back(f);
    }
    std::string path = (fs::path(dir) / "manifest.ppd").string();
    save_manifest(path, m);
    return path;
}

}  // namespace ppd
