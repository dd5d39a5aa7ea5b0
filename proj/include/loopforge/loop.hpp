// Integral loops of the 3x+gamma map: canonical representation, structure
// extraction (even/odd counts, zero-run lengths, indexing sequence), the
// closed-form start-value formula, loop vectors and their similarity
// relation, scaling by common prime factors, and divisibility profiles.
#pragma once

#include "loopforge/trajectory.hpp"

#include <optional>
#include <vector>

namespace loopforge {

// A periodic orbit of the map.  members lists one full period in trajectory
// order beginning at start; m[j] is the length of the even run following the
// (j+1)-th odd member.  Canonical form anchors start at the smallest odd
// member; rotated anchors are produced by anchor_at.
struct IntegralLoop {
    Int gamma;
    Int start;
    long period = 0;       // N
    long even_count = 0;   // rho
    long odd_count = 0;    // nu
    long m0 = 0;           // leading even run; 0 for every stored loop
    std::vector<long> m;   // nu entries, each >= 1, summing to rho
    std::vector<Int> members;
};

struct LoopVector {
    std::vector<Int> entries;    // the nu odd members in trajectory order
    std::vector<long> index_seq; // positions within the period; index_seq[0] == 0
};

struct VectorRelation {
    enum class Kind { equal, similar, distinct } kind = Kind::distinct;
    long shift = 0;  // smallest positive cyclic shift when similar
};

// Exact p-adic bookkeeping around one loop: p^a is the largest power dividing
// every loop-vector entry, p^b divides gamma, p^c divides 2^rho - 3^nu, and
// p^d divides every entry of M * (3^{nu-1},...,3,1)^T.  Always a-b+c-d = 0.
struct DivisibilityProfile {
    Int p;
    long a = 0, b = 0, c = 0, d = 0;
};

// ----- construction -----

// Verifies that raw_cycle really is one period of the map (consecutive steps
// and wrap-around), rotates it so the smallest odd member leads, and extracts
// the structure counts.  Throws not_a_cycle_error on any mismatch.
IntegralLoop canonicalize(const std::vector<Int>& raw_cycle, const Gamma& gamma);

// Builds the loop generated by an even-run composition m, anchored at the
// start value the closed-form formula produces.  Validates realizability by
// full re-simulation: every odd member must lose exactly 2^{m_j} and the
// orbit must close.  Throws not_a_cycle_error when the composition generates
// no loop (non-integral, non-positive, or unrealized division pattern).
IntegralLoop loop_from_m(const Gamma& gamma, const std::vector<long>& m);

// Cycle detection from n followed by canonicalization; empty when the search
// hits a limit.
std::optional<IntegralLoop> find_loop(const Gamma& gamma, const Int& n,
                                      const TrajectoryLimits& limits = {});

// Re-anchors a loop at the odd member n (matrix constructions are
// rotation-sensitive).  Throws invalid_argument_error if n is not an odd
// member.
IntegralLoop anchor_at(const IntegralLoop& loop, const Int& n);

// Re-simulates one period and re-checks every structural invariant; throws
// not_a_cycle_error or internal_inconsistency_error on violation.
void validate_loop(const IntegralLoop& loop);

// ----- structure -----

// 2^rho - 3^nu, the denominator of the start-value formula.
Int loop_denominator(const IntegralLoop& loop);

// True iff the even-run lengths telescope against the indexing sequence:
// m_j = i_j - i_{j-1} - 1 for 1 <= j <= nu-1 and m_nu = N - 1 - i_{nu-1}.
bool telescope_check(const IntegralLoop& loop);

// gamma 2^{m0} (3^{nu-1} + sum_{r=1}^{nu-1} 3^{nu-1-r} 2^{m_1+...+m_r})
// divided by (2^rho - 3^nu), as an exact rational.  The composition m
// generates a loop candidate exactly when this is a positive integer.
Rat loop_formula(const Gamma& gamma, long m0, const std::vector<long>& m);

LoopVector loop_vector(const IntegralLoop& loop);

// equal, similar (cyclic shift), or distinct; throws dimension_mismatch_error
// on length mismatch.
VectorRelation vector_relation(const std::vector<Int>& v1, const std::vector<Int>& v2);
VectorRelation vector_relation(const LoopVector& v1, const LoopVector& v2);

// ----- scaling and divisibility -----

// Divides every member and gamma by the odd prime p; valid whenever p divides
// both start and gamma (then p divides everything).  Throws
// not_divisible_error otherwise.
IntegralLoop scale_loop(const IntegralLoop& loop, const Int& p);

// Number of loops reachable from this one by repeatedly removing common prime
// factors (the loop itself included): product of (1 + multiplicity) over the
// prime factors of gcd(loop vector).
Int count_scaled(const IntegralLoop& loop);

// Computes (a, b, c, d) for an odd prime p and asserts a - b + c - d = 0.
DivisibilityProfile divisibility_profile(const IntegralLoop& loop, const Int& p);

// Two-of-three propagation: for every cyclically consecutive odd pair (v, w),
// if p divides two of {v, w, gamma} it divides the third; additionally the
// multiplicity of p in gamma is at least min(mult(v), mult(w)) for every such
// pair.  p must be an odd prime.
bool lemma_alpha_check(const IntegralLoop& loop, const Int& p);

}  // namespace loopforge
