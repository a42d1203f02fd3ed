/* machine_io.hpp -- text serialization of machines and bundle manifests. */

#ifndef PPD_MACHINE_IO_HPP_
#define PPD_MACHINE_IO_HPP_

#include <iosfwd>

#include "ppd/ppl.hpp"
#include "ppd/two_tape.hpp"

namespace ppd {

// Line-oriented text formats ("ppd-dpda 1" / "ppd-atp 1" / "ppd-bundle 1"
// headers; # starts a comment).  Letter rules are stored by input-letter
// position, so a two-tape machine's tagged input alphabet is rebuilt from the
// untagged tape alphabets on load.  Stack symbols are stored by display name
// and re-interned.

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void save_dpda(std::ostream& out, const Dpda& m);
Dpda load_dpda(std::istream& in);
void save_dpda_file(const std::string& path, const Dpda& m);
Dpda load_dpda_file(const std::string& path);

void save_two_tape(std::ostream& out, const TwoTapePda& m);
TwoTapePda load_two_tape(std::istream& in);
void save_two_tape_file(const std::string& path, const TwoTapePda& m);
TwoTapePda load_two_tape_file(const std::string& path);

// A bundle is a manifest plus machine files in the same directory.
struct BundleManifest {
    enum class Kind { Dpda, Ppl, Atppl, PStructure };
    Kind kind = Kind::Dpda;
    std::string name;
    std::vector<std::string> alphabet;  // declared letters (display names)
    std::vector<std::string> files;     // machine files, relative to the manifest
    std::string group_id;               // oracle binding for pstructure bundles
};

BundleManifest load_manifest(const std::string& path);
void save_manifest(const std::string& path, const BundleManifest& m);

// Loads the payload a manifest describes (the files are resolved relative to
// the manifest's directory).  The language loaders check that every machine
// uses the declared alphabet.
PplLanguage load_ppl_bundle(const std::string& manifest_path);
AtpplRelation load_atppl_bundle(const std::string& manifest_path);

// Writers used by `ppd build`: emit the machine files plus the manifest into
// `dir` and return the manifest path.
std::string save_ppl_bundle(const std::string& dir, const PplLanguage& L);
std::string save_atppl_bundle(const std::string& dir, const AtpplRelation& r);

}  // namespace ppd

#endif
