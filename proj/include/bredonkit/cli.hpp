#pragma once

// Catalog, JSON formats and verification suites behind the command line tool.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bredonkit/bredon.hpp"
#include "bredonkit/cats.hpp"
#include "bredonkit/fmod.hpp"
#include "bredonkit/grp.hpp"
#include "bredonkit/mackey.hpp"
#include "json.hpp"

namespace bredonkit::cli {

using nlohmann::json;

/// S3, S4, D8, Q8, A4, Cn (n >= 1) and Dn (dihedral of order n, n even >= 4).
grp::Group catalog_group(const std::string& name);
/// Dinf and C2*C3 ship as encoded complexes.
bool is_encoded_name(const std::string& name);
bredon::EncodedComplex catalog_complex(const std::string& name);
/// A permutation group from cycle words, e.g. degree 4 with "(1 2 3 4)" and "(1 3)".
grp::Group group_from_gens(std::size_t degree, const std::vector<std::string>& gens);

/// Two-space indented, keys sorted, trailing newline.
std::string dump(const json& j);

json to_json(const zmod::FgAbelian& a);
json to_json(const zmod::IntMatrix& m);
zmod::FgAbelian abelian_from_json(const json& j);
zmod::IntMatrix matrix_from_json(const json& j);

json group_json(const grp::Group& g);
json subgroups_json(const grp::Group& g);
json category_json(const cats::GroupCategory& c);
json module_json(const fmod::CatModule& m);
/// Throws ParseError for malformed input and InvalidModule when the tables are not a module.
fmod::CatModule module_from_json(fmod::CategoryPtr category, const json& j);
json mackey_json(const mackey::MackeyFunctor& m);
/// Throws ParseError or AxiomViolation.
mackey::MackeyFunctor mackey_from_json(mackey::MackeyPtr category, const json& j);
json cohomology_json(const std::vector<zmod::FgAbelian>& groups);

struct SuiteResult {
  std::string name;
  bool ok = false;
  double seconds = 0;
  double limit = 0;
  std::vector<std::string> notes;  // one line per failed or informative check
};

struct SuiteInfo {
  std::string name;
  std::string title;
  double limit;  // seconds
};

/// The acceptance suites in criterion order.
const std::vector<SuiteInfo>& suites();
/// Runs one suite; `group` narrows the mackey-axiom suite to a catalog group.
SuiteResult run_suite(const std::string& name, const std::optional<std::string>& group = {});

/// Entry point of the command line tool: 0 success, 1 verification failure, 2 input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bredonkit::cli
