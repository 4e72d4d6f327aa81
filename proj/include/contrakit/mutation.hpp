#pragma once

#include <string>

namespace contrakit {

/// Deliberate single-site faults used to show the checks are not vacuous.
enum class Mutation {
  None,
  PsiDropLastTerm,    // telescope differential loses its last -s coefficient
  BinomialOffByOne,   // (s+t)-sum uses binom(i+j, i+1)
  EMembershipShift,   // E-membership tests p^(n+1) | u_n instead of p^n
};

inline Mutation &active_mutation() {
  thread_local Mutation m = Mutation::None;
  return m;
}

inline bool mutated(Mutation m) { return active_mutation() == m; }

class ScopedMutation {
public:
  explicit ScopedMutation(Mutation m) : prev_(active_mutation()) { active_mutation() = m; }
  ~ScopedMutation() { active_mutation() = prev_; }
  ScopedMutation(const ScopedMutation &) = delete;
  ScopedMutation &operator=(const ScopedMutation &) = delete;

private:
  Mutation prev_;
};

inline std::string mutation_name(Mutation m) {
  switch (m) {
  case Mutation::None: return "none";
  case Mutation::PsiDropLastTerm: return "psi_drop_last_term";
  case Mutation::BinomialOffByOne: return "binomial_off_by_one";
  case Mutation::EMembershipShift: return "e_membership_shift";
  }
  return "?";
}

} // namespace contrakit
