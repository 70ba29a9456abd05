#include <cctype>

#include "bredonkit/cli.hpp"
#include "bredonkit/errors.hpp"

namespace bredonkit::cli {

namespace {

std::string cycle(std::size_t from, std::size_t to) {
  std::string w = "(";
  for (std::size_t i = from; i <= to; ++i) w += std::to_string(i) + (i < to ? " " : ")");
  return w;
}

std::optional<std::size_t> suffix_number(const std::string& name, char head) {
  if (name.size() < 2 || name[0] != head) return std::nullopt;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
  if (name.size() > 6) return std::nullopt;
  return static_cast<std::size_t>(std::stoul(name.substr(1)));
}

}  // namespace

grp::Group group_from_gens(std::size_t degree, const std::vector<std::string>& gens) {
  if (degree == 0) throw ParseError("degree must be positive");
  return grp::Group::from_generators(degree, gens);
}

grp::Group catalog_group(const std::string& name) {
  if (name == "S3") return group_from_gens(3, {"(1 2)", "(1 2 3)"});
  if (name == "S4") return group_from_gens(4, {"(1 2)", "(1 2 3 4)"});
  if (name == "D8") return group_from_gens(4, {"(1 2 3 4)", "(1 3)"});
  if (name == "Q8") return group_from_gens(8, {"(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"});
  if (name == "A4") return group_from_gens(4, {"(1 2 3)", "(1 2)(3 4)"});
  if (auto n = suffix_number(name, 'C')) {
    if (*n == 0) throw ParseError("C0 is not a finite cyclic group");
    if (*n == 1) return group_from_gens(1, {});
    return group_from_gens(*n, {cycle(1, *n)});
  }
  if (auto n = suffix_number(name, 'D')) {
    if (*n < 4 || *n % 2 != 0) throw ParseError("dihedral groups are D<n> with n even and at least 4");
    const std::size_t m = *n / 2;
    std::string flip;
    for (std::size_t i = 2, j = m; i < j; ++i, --j) flip += "(" + std::to_string(i) + " " + std::to_string(j) + ")";
    if (flip.empty()) flip = "(1 2)";  // m = 2: the Klein four group
    return group_from_gens(m == 2 ? 4 : m, m == 2 ? std::vector<std::string>{"(1 2)(3 4)", "(1 3)(2 4)"}
                                               : std::vector<std::string>{cycle(1, m), flip});
  }
  if (is_encoded_name(name)) return grp::Group::encoded(name);
  throw ParseError("unknown group \"" + name + "\" (expected S3, S4, D8, Q8, A4, Cn, Dn, Dinf or C2*C3)");
}

bool is_encoded_name(const std::string& name) { return name == "Dinf" || name == "C2*C3"; }

bredon::EncodedComplex catalog_complex(const std::string& name) {
  const std::string dir = BREDONKIT_CATALOG_DIR;
  if (name == "Dinf") return bredon::load_encoded(dir + "/Dinf.json");
  if (name == "C2*C3") return bredon::load_encoded(dir + "/c2_star_c3.json");
  if (name == "interval_c2") return bredon::load_encoded(dir + "/interval_c2.json");
  throw ParseError("no catalog complex \"" + name + "\"");
}

}  // namespace bredonkit::cli
