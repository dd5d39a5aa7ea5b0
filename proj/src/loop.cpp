#include "loopforge/loop.hpp"

#include <algorithm>

namespace loopforge {

namespace {

// Positions of the odd members within one period.
std::vector<long> odd_positions(const std::vector<Int>& members) {
    std::vector<long> pos;
    for (size_t i = 0; i < members.size(); ++i)
        if (is_odd(members[i])) pos.push_back(static_cast<long>(i));
    return pos;
}

// Builds a loop from a step-consistent period that starts at an odd member.
// Single code path shared by canonicalize, anchor_at, scale_loop and
// loop_from_m so every route enforces the same invariants.
IntegralLoop assemble(const Gamma& gamma, std::vector<Int> members) {
    if (members.empty()) throw not_a_cycle_error("assemble: empty cycle");
    const long N = static_cast<long>(members.size());
    for (long i = 0; i < N; ++i) {
        if (members[static_cast<size_t>(i)] < 1)
            throw not_a_cycle_error("assemble: members must be positive");
        const Int next = step(gamma, members[static_cast<size_t>(i)]);
        if (next != members[static_cast<size_t>((i + 1) % N)])
            throw not_a_cycle_error("assemble: sequence is not closed under the map");
    }
    if (!is_odd(members[0])) throw not_a_cycle_error("assemble: anchor member must be odd");

    const std::vector<long> idx = odd_positions(members);
    const long nu = static_cast<long>(idx.size());
    const long rho = N - nu;

    IntegralLoop loop;
    loop.gamma = gamma.value;
    loop.start = members[0];
    loop.period = N;
    loop.even_count = rho;
    loop.odd_count = nu;
    loop.m0 = 0;
    loop.m.reserve(static_cast<size_t>(nu));
    for (long j = 1; j < nu; ++j)
        loop.m.push_back(idx[static_cast<size_t>(j)] - idx[static_cast<size_t>(j - 1)] - 1);
    loop.m.push_back(N - 1 - idx[static_cast<size_t>(nu - 1)]);
    loop.members = std::move(members);

    for (long mj : loop.m)
        if (mj < 1)
            throw internal_inconsistency_error("assemble: zero-length even run");
    if (pow2(static_cast<unsigned long>(rho)) <= pow3(static_cast<unsigned long>(nu)))
        throw not_a_cycle_error("assemble: 2^rho <= 3^nu is impossible for a positive loop");
    return loop;
}

std::vector<Int> rotate_to(const std::vector<Int>& members, size_t k) {
    std::vector<Int> out(members.begin() + static_cast<long>(k), members.end());
    out.insert(out.end(), members.begin(), members.begin() + static_cast<long>(k));
    return out;
}

// (M * (3^{nu-1},...,1)^T)_j computed from the even-run lengths alone:
// 3^{nu-1} + sum_{k=2}^{nu} 3^{nu-k} 2^{m_j + ... + m_{j+k-2}} cyclically.
// Independent of the members, which keeps profile checks honest.
std::vector<Int> weighted_powers(const IntegralLoop& loop) {
    const long nu = loop.odd_count;
    std::vector<Int> out;
    out.reserve(static_cast<size_t>(nu));
    for (long j = 0; j < nu; ++j) {
        Int acc = pow3(static_cast<unsigned long>(nu - 1));
        long e = 0;
        for (long k = 2; k <= nu; ++k) {
            e += loop.m[static_cast<size_t>((j + k - 2) % nu)];
            acc += pow3(static_cast<unsigned long>(nu - k)) * pow2(static_cast<unsigned long>(e));
        }
        out.push_back(acc);
    }
    return out;
}

void require_odd_prime(const Int& p, const char* who) {
    if (p < 3 || !is_odd(p) || !is_probable_prime(p))
        throw invalid_argument_error(std::string(who) + ": p must be an odd prime");
}

}  // namespace

// ----- construction -----

IntegralLoop canonicalize(const std::vector<Int>& raw_cycle, const Gamma& gamma) {
    if (raw_cycle.empty()) throw not_a_cycle_error("canonicalize: empty cycle");
    size_t best = raw_cycle.size();
    for (size_t i = 0; i < raw_cycle.size(); ++i) {
        if (!is_odd(raw_cycle[i])) continue;
        if (best == raw_cycle.size() || raw_cycle[i] < raw_cycle[best]) best = i;
    }
    if (best == raw_cycle.size()) throw not_a_cycle_error("canonicalize: cycle has no odd member");
    return assemble(gamma, rotate_to(raw_cycle, best));
}

IntegralLoop loop_from_m(const Gamma& gamma, const std::vector<long>& m) {
    const Rat candidate = loop_formula(gamma, 0, m);
    if (!is_integral(candidate) || candidate <= 0)
        throw not_a_cycle_error("loop_from_m: formula value is not a positive integer");
    const Int start(candidate.get_num());

    // Realizability: each odd member must shed exactly 2^{m_j}.
    std::vector<Int> members;
    Int x = start;
    for (long mj : m) {
        members.push_back(x);
        Int y = 3 * x + gamma.value;
        if (two_adic_valuation(y) != mj)
            throw not_a_cycle_error("loop_from_m: composition not realized by the orbit");
        for (long i = 0; i < mj; ++i) {
            members.push_back(y);
            y /= 2;
        }
        x = y;
    }
    if (x != start) throw not_a_cycle_error("loop_from_m: orbit does not close");

    IntegralLoop loop = assemble(gamma, std::move(members));
    if (loop.m != m)
        throw internal_inconsistency_error("loop_from_m: extracted runs disagree with input");
    return loop;
}

std::optional<IntegralLoop> find_loop(const Gamma& gamma, const Int& n,
                                      const TrajectoryLimits& limits) {
    const CycleSearch found = detect_cycle(gamma, n, limits);
    if (!found.found) return std::nullopt;
    std::vector<Int> cycle;
    cycle.reserve(static_cast<size_t>(found.length));
    Int x = found.entry;
    for (long i = 0; i < found.length; ++i) {
        cycle.push_back(x);
        x = step(gamma, x);
    }
    return canonicalize(cycle, gamma);
}

IntegralLoop anchor_at(const IntegralLoop& loop, const Int& n) {
    if (!is_odd(n)) throw invalid_argument_error("anchor_at: anchor must be odd");
    for (size_t i = 0; i < loop.members.size(); ++i) {
        if (loop.members[i] == n)
            return assemble(Gamma(loop.gamma), rotate_to(loop.members, i));
    }
    throw invalid_argument_error("anchor_at: " + to_dec(n) + " is not a member");
}

void validate_loop(const IntegralLoop& loop) {
    const IntegralLoop fresh = assemble(Gamma(loop.gamma), loop.members);
    if (fresh.start != loop.start || fresh.period != loop.period ||
        fresh.even_count != loop.even_count || fresh.odd_count != loop.odd_count ||
        fresh.m != loop.m || loop.m0 != 0)
        throw not_a_cycle_error("validate_loop: stored structure disagrees with re-simulation");
}

// ----- structure -----

Int loop_denominator(const IntegralLoop& loop) {
    return pow2(static_cast<unsigned long>(loop.even_count)) -
           pow3(static_cast<unsigned long>(loop.odd_count));
}

bool telescope_check(const IntegralLoop& loop) {
    const std::vector<long> idx = odd_positions(loop.members);
    const long nu = static_cast<long>(idx.size());
    if (nu != loop.odd_count || nu == 0 || idx[0] != 0) return false;
    for (long j = 1; j < nu; ++j) {
        if (loop.m[static_cast<size_t>(j - 1)] !=
            idx[static_cast<size_t>(j)] - idx[static_cast<size_t>(j - 1)] - 1)
            return false;
    }
    return loop.m[static_cast<size_t>(nu - 1)] == loop.period - 1 - idx[static_cast<size_t>(nu - 1)];
}

Rat loop_formula(const Gamma& gamma, long m0, const std::vector<long>& m) {
    if (m.empty()) throw invalid_argument_error("loop_formula: need at least one run length");
    if (m0 < 0) throw invalid_argument_error("loop_formula: m0 must be nonnegative");
    long rho = 0;
    for (long mj : m) {
        if (mj < 1) throw invalid_argument_error("loop_formula: run lengths must be positive");
        rho += mj;
    }
    const long nu = static_cast<long>(m.size());

    Int weight = pow3(static_cast<unsigned long>(nu - 1));
    long e = 0;
    for (long r = 1; r < nu; ++r) {
        e += m[static_cast<size_t>(r - 1)];
        weight += pow3(static_cast<unsigned long>(nu - 1 - r)) * pow2(static_cast<unsigned long>(e));
    }
    const Int denom = pow2(static_cast<unsigned long>(rho)) - pow3(static_cast<unsigned long>(nu));
    if (denom == 0) throw degenerate_denominator_error("loop_formula: 2^rho == 3^nu");

    Rat r(gamma.value * pow2(static_cast<unsigned long>(m0)) * weight, denom);
    r.canonicalize();
    return r;
}

LoopVector loop_vector(const IntegralLoop& loop) {
    LoopVector v;
    v.index_seq = odd_positions(loop.members);
    v.entries.reserve(v.index_seq.size());
    for (long i : v.index_seq) v.entries.push_back(loop.members[static_cast<size_t>(i)]);
    return v;
}

VectorRelation vector_relation(const std::vector<Int>& v1, const std::vector<Int>& v2) {
    if (v1.size() != v2.size()) return {};  // different lengths: distinct
    const long nu = static_cast<long>(v1.size());
    for (long k = 0; k < nu; ++k) {
        bool match = true;
        for (long j = 0; j < nu && match; ++j)
            match = v1[static_cast<size_t>((j + k) % nu)] == v2[static_cast<size_t>(j)];
        if (match) {
            if (k == 0) return {VectorRelation::Kind::equal, 0};
            return {VectorRelation::Kind::similar, k};
        }
    }
    return {VectorRelation::Kind::distinct, 0};
}

VectorRelation vector_relation(const LoopVector& v1, const LoopVector& v2) {
    return vector_relation(v1.entries, v2.entries);
}

// ----- scaling and divisibility -----

IntegralLoop scale_loop(const IntegralLoop& loop, const Int& p) {
    require_odd_prime(p, "scale_loop");
    if (!divides(p, loop.start) || !divides(p, loop.gamma))
        throw not_divisible_error("scale_loop: p must divide both start and gamma");
    std::vector<Int> scaled;
    scaled.reserve(loop.members.size());
    for (const Int& v : loop.members) {
        if (!divides(p, v))
            throw internal_inconsistency_error("scale_loop: member not divisible by p");
        scaled.push_back(v / p);
    }
    return assemble(Gamma(loop.gamma / p), std::move(scaled));
}

Int count_scaled(const IntegralLoop& loop) {
    const LoopVector v = loop_vector(loop);
    Int s = v.entries[0];
    for (const Int& e : v.entries) s = gcd_int(s, e);
    Int total = 1;
    for (const auto& [p, e] : factorize(s)) {
        (void)p;
        total *= (1 + Int(e));
    }
    return total;
}

DivisibilityProfile divisibility_profile(const IntegralLoop& loop, const Int& p) {
    require_odd_prime(p, "divisibility_profile");
    DivisibilityProfile prof;
    prof.p = p;

    const LoopVector v = loop_vector(loop);
    prof.a = multiplicity(v.entries[0], p);
    for (const Int& e : v.entries) prof.a = std::min(prof.a, multiplicity(e, p));
    prof.b = multiplicity(loop.gamma, p);
    prof.c = multiplicity(loop_denominator(loop), p);
    const std::vector<Int> w = weighted_powers(loop);
    prof.d = multiplicity(w[0], p);
    for (const Int& e : w) prof.d = std::min(prof.d, multiplicity(e, p));

    if (prof.a - prof.b + prof.c - prof.d != 0)
        throw internal_inconsistency_error("divisibility_profile: a-b+c-d != 0");
    return prof;
}

bool lemma_alpha_check(const IntegralLoop& loop, const Int& p) {
    require_odd_prime(p, "lemma_alpha_check");
    const LoopVector v = loop_vector(loop);
    const long nu = static_cast<long>(v.entries.size());
    const long bg = multiplicity(loop.gamma, p);
    for (long j = 0; j < nu; ++j) {
        const Int& x = v.entries[static_cast<size_t>(j)];
        const Int& y = v.entries[static_cast<size_t>((j + 1) % nu)];
        const int hits = (divides(p, x) ? 1 : 0) + (divides(p, y) ? 1 : 0) +
                         (divides(p, loop.gamma) ? 1 : 0);
        if (hits == 2) return false;
        if (bg < std::min(multiplicity(x, p), multiplicity(y, p))) return false;
    }
    return true;
}

}  // namespace loopforge
