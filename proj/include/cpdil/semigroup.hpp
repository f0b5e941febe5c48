#pragma once

// CP-semigroups over N^k generated by k commuting CP maps, and the
// unitalization that embeds a contractive semigroup on M_d as the upper-left
// corner of a unital one on M_{d+1}.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cpdil/cpmap.hpp"
#include "cpdil/report.hpp"

namespace cpdil {

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::size_t> components) : c_(std::move(components)) {}

  static MultiIndex zero(std::size_t k) { return MultiIndex(std::vector<std::size_t>(k, 0)); }
  static MultiIndex unit(std::size_t k, std::size_t i);
  static MultiIndex uniform(std::size_t k, std::size_t value) {
    return MultiIndex(std::vector<std::size_t>(k, value));
  }

  std::size_t size() const { return c_.size(); }
  std::size_t operator[](std::size_t i) const { return c_[i]; }
  const std::vector<std::size_t>& components() const { return c_; }

  bool is_zero() const;
  std::size_t total() const;

  // Componentwise order.
  bool dominated_by(const MultiIndex& box) const;

  MultiIndex operator+(const MultiIndex& other) const;

  // "(1,0,2)"
  std::string str() const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<std::size_t> c_;
};

// All s <= box in lexicographic order.
std::vector<MultiIndex> box_indices(const MultiIndex& box);

class CpSemigroup {
 public:
  // Validates CP, contractivity and pairwise commutation of the generators.
  // Throws InvalidArgument (empty), DimensionMismatch, NotCp, NotContractive, NotCommuting.
  static CpSemigroup from_generators(std::vector<CpMap> generators, const Tolerance& tol = {});

  // Skips every construction check. Used to exercise the failure paths of
  // the verification suites.
  static CpSemigroup unchecked(std::vector<CpMap> generators);

  std::size_t dim() const { return generators_.front().dim(); }
  std::size_t arity() const { return generators_.size(); }
  const std::vector<CpMap>& generators() const { return generators_; }
  const CpMap& generator(std::size_t i) const { return generators_.at(i); }

  // T_s = T_1^{s_1} o ... o T_k^{s_k}; memoized. Throws ArityMismatch.
  CpMap evaluate(const MultiIndex& s) const;

 private:
  explicit CpSemigroup(std::vector<CpMap> generators);

  struct Cache {
    std::mutex mutex;
    std::map<MultiIndex, CpMap> entries;
  };

  std::vector<CpMap> generators_;
  std::shared_ptr<Cache> cache_;
};

CpSemigroup from_generators(std::vector<CpMap> generators, const Tolerance& tol = {});

CpMap evaluate(const CpSemigroup& g, const MultiIndex& s);

// For every s, t with s + t <= box: ||T_{s+t} - T_s o T_t|| in superoperator norm.
VerificationReport verify_semigroup_law(const CpSemigroup& g, const MultiIndex& box,
                                        const Tolerance& tol = {});

bool is_markov(const CpSemigroup& g, const Tolerance& tol = {});

// Per-generator CP, unitality and pairwise commutation residuals.
VerificationReport markov_report(const CpSemigroup& g, const Tolerance& tol = {});

// Generator-level unitalization on M_{d+1}:
//   [A h; g* c] |-> [T(A) + c(I - T(I))  0; 0  c]
// realized with Kraus operators {k_i (+) 0} and {w_j e_{d+1}^*}, w_j the
// columns of (I - T(I))^{1/2} (+) 1. Throws NotContractive.
CpMap unitalize_map(const CpMap& t, const Tolerance& tol = {});

CpSemigroup unitalize(const CpSemigroup& g, const Tolerance& tol = {});

// Compares T_s(b) with the upper-left d x d block of T~_s(b (+) 0) for random
// Hermitian b, every s <= box. Throws DimensionMismatch / ArityMismatch.
VerificationReport compression_check(const CpSemigroup& g, const CpSemigroup& gu,
                                     std::size_t samples, const MultiIndex& box,
                                     const Tolerance& tol = {}, std::uint64_t seed = 0x5eed);

}  // namespace cpdil
