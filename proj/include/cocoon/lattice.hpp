#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cocoon::lattice {

inline constexpr std::size_t kDefaultMaxPolicies = 5;

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LabelFamily;

// A set of policies drawn from one family. Bit i set means base policy i.
class SecrecyLabel {
 public:
  SecrecyLabel(std::uint64_t family_id, std::uint32_t mask) : family_id_(family_id), mask_(mask) {}

  std::uint64_t family_id() const { return family_id_; }
  std::uint32_t mask() const { return mask_; }

  bool operator==(const SecrecyLabel&) const = default;

 private:
  std::uint64_t family_id_;
  std::uint32_t mask_;
};

class LabelFamily {
 public:
  const std::vector<std::string>& base_policies() const { return policies_; }
  // All 2^n labels ordered by mask.
  const std::vector<SecrecyLabel>& labels() const { return labels_; }
  // (hi, lo) pairs with lo a subset of hi, ordered by (hi mask, lo mask).
  const std::vector<std::pair<SecrecyLabel, SecrecyLabel>>& order_relation() const { return order_; }
  std::uint64_t id() const { return id_; }

  // Label containing exactly the named policies; throws on unknown names.
  SecrecyLabel label_of(const std::vector<std::string>& names) const;
  // Policy names of a label, sorted.
  std::vector<std::string> policies_of(const SecrecyLabel& l) const;
  // Canonical declaration name, e.g. "Label_AB" or "Label_Empty".
  std::string canonical_name(const SecrecyLabel& l) const;

 private:
  friend LabelFamily generate_lattice(const std::vector<std::string>&, std::size_t);
  std::uint64_t id_ = 0;
  std::vector<std::string> policies_;  // sorted
  std::vector<SecrecyLabel> labels_;
  std::vector<std::pair<SecrecyLabel, SecrecyLabel>> order_;
};

LabelFamily generate_lattice(const std::vector<std::string>& base_policies,
                             std::size_t max_policies = kDefaultMaxPolicies);

bool at_least_as_secret(const SecrecyLabel& l1, const SecrecyLabel& l2);
SecrecyLabel join(const SecrecyLabel& l1, const SecrecyLabel& l2);

// Header text declaring one type per label plus one ordering specialization
// per relation pair. Identical input gives identical bytes.
std::string emit_header(const LabelFamily& family, const std::string& ns = "lat");

std::vector<std::string> split_policy_list(const std::string& csv);

}  // namespace cocoon::lattice
