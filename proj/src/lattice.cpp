#include "cocoon/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace cocoon::lattice {

namespace {

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

bool valid_policy_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; });
}

// FNV-1a over the sorted policy list: families with the same policies compare equal.
std::uint64_t family_hash(const std::vector<std::string>& sorted) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (const auto& p : sorted) {
    for (char c : p) mix(static_cast<unsigned char>(c));
    mix(0xff);
  }
  return h;
}

void require_same_family(const SecrecyLabel& a, const SecrecyLabel& b) {
  if (a.family_id() != b.family_id())
    throw LatticeError("labels belong to different label families");
}

}  // namespace

LabelFamily generate_lattice(const std::vector<std::string>& base_policies, std::size_t max_policies) {
  std::set<std::string> seen;
  for (const auto& p : base_policies) {
    if (!valid_policy_name(p))
      throw LatticeError("invalid policy name '" + p + "': use letters and digits, starting with a letter");
    if (!seen.insert(upper(p)).second) throw LatticeError("duplicate policy name '" + p + "'");
  }
  if (base_policies.size() > max_policies) {
    throw LatticeError("too many base policies (" + std::to_string(base_policies.size()) + ", maximum " +
                       std::to_string(max_policies) +
                       "): the family has 2^n labels and one ordering constraint per subset pair; "
                       "merge policies that always travel together or split the program into separate lattices");
  }

  LabelFamily fam;
  fam.policies_ = base_policies;
  std::sort(fam.policies_.begin(), fam.policies_.end());
  fam.id_ = family_hash(fam.policies_);

  const std::uint32_t count = 1u << fam.policies_.size();
  for (std::uint32_t m = 0; m < count; ++m) fam.labels_.emplace_back(fam.id_, m);
  for (std::uint32_t hi = 0; hi < count; ++hi)
    for (std::uint32_t lo = 0; lo < count; ++lo)
      if ((lo & ~hi) == 0) fam.order_.emplace_back(fam.labels_[hi], fam.labels_[lo]);
  return fam;
}

SecrecyLabel LabelFamily::label_of(const std::vector<std::string>& names) const {
  std::uint32_t mask = 0;
  for (const auto& n : names) {
    auto it = std::find(policies_.begin(), policies_.end(), n);
    if (it == policies_.end()) throw LatticeError("unknown policy '" + n + "'");
    mask |= 1u << static_cast<std::uint32_t>(it - policies_.begin());
  }
  return SecrecyLabel(id_, mask);
}

std::vector<std::string> LabelFamily::policies_of(const SecrecyLabel& l) const {
  if (l.family_id() != id_) throw LatticeError("label belongs to a different label family");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < policies_.size(); ++i)
    if (l.mask() & (1u << i)) out.push_back(policies_[i]);
  return out;
}

std::string LabelFamily::canonical_name(const SecrecyLabel& l) const {
  auto names = policies_of(l);
  if (names.empty()) return "Label_Empty";
  bool single = std::all_of(policies_.begin(), policies_.end(), [](const std::string& p) { return p.size() == 1; });
  std::string out = "Label_";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!single && i > 0) out += '_';
    out += upper(names[i]);
  }
  return out;
}

bool at_least_as_secret(const SecrecyLabel& l1, const SecrecyLabel& l2) {
  require_same_family(l1, l2);
  return (l2.mask() & ~l1.mask()) == 0;
}

SecrecyLabel join(const SecrecyLabel& l1, const SecrecyLabel& l2) {
  require_same_family(l1, l2);
  return SecrecyLabel(l1.family_id(), l1.mask() | l2.mask());
}

std::string emit_header(const LabelFamily& family, const std::string& ns) {
  std::ostringstream o;
  const auto& pol = family.base_policies();
  std::string family_tag = "Family";
  for (const auto& p : pol) family_tag += "_" + p;
  if (pol.empty()) family_tag += "_empty";

  o << "// Generated by lattice-gen from policies:";
  for (const auto& p : pol) o << ' ' << p;
  o << "\n// Do not edit.\n#pragma once\n\n#include <type_traits>\n\n#include <cocoon/label.hpp>\n\n";
  o << "namespace " << ns << " {\n\nstruct " << family_tag << " {};\n\n";
  for (const auto& l : family.labels()) {
    o << "struct " << family.canonical_name(l) << " : ::cocoon::label_base<" << family_tag << ", 0x"
      << std::hex << l.mask() << std::dec << "u> {\n  static constexpr const char* name = \""
      << family.canonical_name(l) << "\";\n};\n";
  }
  o << "\n}  // namespace " << ns << "\n\nnamespace cocoon {\n\n";
  for (const auto& [hi, lo] : family.order_relation()) {
    o << "template <>\nstruct more_secret_than<::" << ns << "::" << family.canonical_name(hi) << ", ::" << ns
      << "::" << family.canonical_name(lo) << "> : std::true_type {};\n";
  }
  o << "\n}  // namespace cocoon\n";
  return o.str();
}

std::vector<std::string> split_policy_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(csv);
  while (std::getline(in, cur, ',')) {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    if (b == std::string::npos) {
      if (!csv.empty()) throw LatticeError("empty policy name in list '" + csv + "'");
      continue;
    }
    out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace cocoon::lattice
