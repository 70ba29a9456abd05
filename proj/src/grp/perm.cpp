#include <cctype>
#include <cstdlib>
#include <sstream>

#include "bredonkit/errors.hpp"
#include "bredonkit/grp.hpp"

namespace bredonkit::grp {

Perm::Perm(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw ParseError("image list is not a permutation");
    seen[v] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  std::vector<std::uint32_t> im(degree);
  for (std::size_t i = 0; i < degree; ++i) im[i] = static_cast<std::uint32_t>(i);
  Perm p;
  p.images_ = std::move(im);
  return p;
}

Perm operator*(const Perm& g, const Perm& h) {
  Perm p;
  p.images_.resize(h.images_.size());
  for (std::size_t i = 0; i < h.images_.size(); ++i) p.images_[i] = g.images_[h.images_[i]];
  return p;
}

Perm Perm::inverse() const {
  Perm p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[images_[i]] = static_cast<std::uint32_t>(i);
  return p;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::string Perm::to_cycles() const {
  std::ostringstream os;
  std::vector<bool> done(images_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (done[i] || images_[i] == i) continue;
    any = true;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      if (!first) os << ' ';
      os << j + 1;
      first = false;
      j = images_[j];
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

Perm parse_cycles(std::size_t degree, const std::string& word) {
  Perm result = Perm::identity(degree);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("bad cycle word \"" + word + "\": " + why);
  };
  while (pos < word.size()) {
    char ch = word[pos];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*') {
      ++pos;
      continue;
    }
    if (ch != '(') fail("expected '('");
    ++pos;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      while (pos < word.size() &&
             (std::isspace(static_cast<unsigned char>(word[pos])) || word[pos] == ','))
        ++pos;
      if (pos >= word.size()) fail("unterminated cycle");
      if (word[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(word[pos]))) fail("unexpected character");
      std::size_t end = pos;
      while (end < word.size() && std::isdigit(static_cast<unsigned char>(word[end]))) ++end;
      unsigned long v = std::strtoul(word.substr(pos, end - pos).c_str(), nullptr, 10);
      pos = end;
      if (v < 1 || v > degree) fail("point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      for (auto c : cycle)
        if (c == v - 1) fail("repeated point " + std::to_string(v));
      cycle.push_back(static_cast<std::uint32_t>(v - 1));
    }
    std::vector<std::uint32_t> im = Perm::identity(degree).images();
    for (std::size_t i = 0; i < cycle.size(); ++i) im[cycle[i]] = cycle[(i + 1) % cycle.size()];
    result = result * Perm(std::move(im));
  }
  return result;
}

std::size_t default_element_bound() {
  if (const char* env = std::getenv("BREDONKIT_ELEMENT_BOUND")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 20000;
}

}  // namespace bredonkit::grp
