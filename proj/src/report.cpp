#include "loopforge/report.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace loopforge {

const char* to_string(CheckVerdict v) {
    switch (v) {
        case CheckVerdict::pass: return "pass";
        case CheckVerdict::fail: return "fail";
        case CheckVerdict::hypothesis_not_met: return "hypothesis_not_met";
    }
    return "fail";
}

bool VerificationReport::all_ok() const {
    for (const CheckResult& c : checks)
        if (c.verdict == CheckVerdict::fail) return false;
    return true;
}

Json VerificationReport::to_json() const {
    Json j;
    j["loop"] = loop;
    j["version"] = version;
    j["generated"] = generated;
    j["all_ok"] = all_ok();
    Json arr = Json::array();
    for (const CheckResult& c : checks) {
        Json e;
        e["name"] = c.name;
        e["verdict"] = to_string(c.verdict);
        e["witness"] = c.witness;
        arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    return j;
}

// ----- serialization -----

Json loop_to_json(const IntegralLoop& loop) {
    Json j;
    j["gamma"] = to_dec(loop.gamma);
    j["start"] = to_dec(loop.start);
    j["N"] = loop.period;
    j["rho"] = loop.even_count;
    j["nu"] = loop.odd_count;
    j["m"] = loop.m;
    Json members = Json::array();
    for (const Int& v : loop.members) members.push_back(to_dec(v));
    j["members"] = std::move(members);
    return j;
}

Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (long i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(to_dec(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json matrix_to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (long i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(to_dec(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json verdict_to_json(const TheoremVerdict& v) {
    Json j;
    j["p"] = to_dec(v.p);
    switch (v.kind) {
        case TheoremVerdict::Kind::nonsingular_mod_p: j["kind"] = "nonsingular_mod_p"; break;
        case TheoremVerdict::Kind::singular_mod_p: j["kind"] = "singular_mod_p"; break;
        case TheoremVerdict::Kind::hypothesis_not_met: j["kind"] = "hypothesis_not_met"; break;
    }
    j["reason"] = v.reason;
    j["consistent"] = v.consistent;
    return j;
}

// ----- analysis -----

namespace {

CheckVerdict verdict_of(const TheoremVerdict& v) {
    if (!v.consistent) return CheckVerdict::fail;
    if (v.kind == TheoremVerdict::Kind::hypothesis_not_met)
        return CheckVerdict::hypothesis_not_met;
    return CheckVerdict::pass;
}

// Sorted distinct odd primes of gamma * (2^rho - 3^nu) * gcd(loop vector).
std::vector<Int> relevant_primes(const IntegralLoop& loop) {
    const LoopVector v = loop_vector(loop);
    Int s = v.entries[0];
    for (const Int& e : v.entries) s = gcd_int(s, e);
    std::set<Int> ps;
    for (const Int& p : prime_divisors(loop.gamma)) ps.insert(p);
    for (const Int& p : prime_divisors(abs(loop_denominator(loop)))) ps.insert(p);
    for (const Int& p : prime_divisors(s)) ps.insert(p);
    ps.erase(Int(2));  // never present: everything here is odd
    return {ps.begin(), ps.end()};
}

bool equal_mat(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

bool is_identity(const RatMatrix& a) {
    if (a.rows() != a.cols()) return false;
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            if (a(i, j) != ((i == j) ? Rat(1) : Rat(0))) return false;
    return true;
}

bool maps_vector(const RatMatrix& t, const IntegralLoop& a, const IntegralLoop& b) {
    const LoopVector va = loop_vector(a);
    const LoopVector vb = loop_vector(b);
    RatVector x(t.cols());
    for (long j = 0; j < t.cols(); ++j) x(j) = Rat(va.entries[static_cast<size_t>(j)]);
    const RatVector y = t * x;
    for (long j = 0; j < t.rows(); ++j)
        if (y(j) != Rat(vb.entries[static_cast<size_t>(j)])) return false;
    return true;
}

bool row_sums_one(const RatMatrix& t) {
    for (long i = 0; i < t.rows(); ++i) {
        Rat s = 0;
        for (long j = 0; j < t.cols(); ++j) s += t(i, j);
        if (s != 1) return false;
    }
    return true;
}

}  // namespace

VerificationReport analyze_loop(const IntegralLoop& loop) {
    VerificationReport rep;
    rep.loop = loop_to_json(loop);

    auto add = [&](std::string name, CheckVerdict v, Json witness = Json::object()) {
        rep.checks.push_back({std::move(name), v, std::move(witness)});
    };
    auto boolean = [](bool ok) { return ok ? CheckVerdict::pass : CheckVerdict::fail; };

    // structure: stored fields match re-simulation, runs telescope correctly
    try {
        validate_loop(loop);
        add("structure", boolean(telescope_check(loop)),
            {{"N", loop.period}, {"rho", loop.even_count}, {"nu", loop.odd_count}});
    } catch (const error& e) {
        add("structure", CheckVerdict::fail, {{"error", e.what()}});
    }

    // start value reproduced by the closed-form formula
    {
        const Rat f = loop_formula(Gamma(loop.gamma), 0, loop.m);
        add("formula_round_trip", boolean(is_integral(f) && Int(f.get_num()) == loop.start),
            {{"formula", to_dec(f)}});
    }

    const LoopMatrices lm = build_matrices(loop);
    add("central_identity", boolean(verify_central(loop)));
    add("product_identities", boolean(dd_identities(loop)));

    // D^nu must be 2^rho times the identity, through the exponent rule
    {
        const IntMatrix dn = d_power(lm, loop.odd_count);
        bool ok = true;
        const Int p2 = pow2(static_cast<unsigned long>(loop.even_count));
        for (long i = 0; i < dn.rows() && ok; ++i)
            for (long j = 0; j < dn.cols() && ok; ++j)
                if (dn(i, j) != ((i == j) ? p2 : Int(0))) ok = false;
        add("power_closure", boolean(ok));
    }

    // determinant correspondence
    const DetsMatch dm = dets_match(loop);
    add("determinant_match", boolean(dm.match),
        {{"det_m", to_dec(dm.det_m)},
         {"det_r", to_dec(dm.det_r)},
         {"radical_integral", dm.radical_integral}});

    // divisibility bookkeeping per relevant odd prime
    for (const Int& p : relevant_primes(loop)) {
        try {
            const DivisibilityProfile prof = divisibility_profile(loop, p);
            add("divisibility_profile[p=" + to_dec(p) + "]", CheckVerdict::pass,
                {{"a", prof.a}, {"b", prof.b}, {"c", prof.c}, {"d", prof.d}});
        } catch (const error& e) {
            add("divisibility_profile[p=" + to_dec(p) + "]", CheckVerdict::fail,
                {{"error", e.what()}});
        }
        add("two_of_three[p=" + to_dec(p) + "]", boolean(lemma_alpha_check(loop, p)));
        const TheoremVerdict mg = mod_gamma_prime_check(loop, p);
        add("prime_power_singularity[p=" + to_dec(p) + "]", verdict_of(mg), verdict_to_json(mg));
    }

    for (const TheoremVerdict& v : theorem_x_check(loop))
        add("singularity_criterion[p=" + to_dec(v.p) + "]", verdict_of(v), verdict_to_json(v));

    {
        const TheoremVerdict v = prop_mod_gamma_check(loop);
        add("prime_modulus_singularity", verdict_of(v), verdict_to_json(v));
    }

    // inverse row sums and the affine fixed point need an invertible M
    if (dm.det_m != 0) {
        const RatVector sums = inverse_row_sums(lm.M);
        bool ok = true;
        for (long i = 0; i < sums.rows(); ++i)
            if (sums(i) != ((i == 0) ? Rat(1) : Rat(0))) ok = false;
        add("inverse_row_sums", boolean(ok));

        const AffineFixedPoint afp = affine_fixed_point(loop);
        add("affine_fixed_point",
            boolean(afp.fixes_loop_vector && afp.first_row_unit && afp.conjugate_block_form),
            {{"fixes_loop_vector", afp.fixes_loop_vector},
             {"first_row_unit", afp.first_row_unit},
             {"conjugate_block_form", afp.conjugate_block_form}});
    } else {
        add("inverse_row_sums", CheckVerdict::hypothesis_not_met, {{"reason", "M is singular"}});
        add("affine_fixed_point", CheckVerdict::hypothesis_not_met,
            {{"reason", "M is singular"}});
    }

    return rep;
}

VerificationReport analyze(const Gamma& gamma, const Int& n, const TrajectoryLimits& limits) {
    std::optional<IntegralLoop> loop = find_loop(gamma, n, limits);
    if (!loop)
        throw not_a_cycle_error("analyze: no cycle found from " + to_dec(n) +
                                " within the search limits");
    if (is_odd(n)) {
        for (const Int& v : loop->members)
            if (v == n) return analyze_loop(anchor_at(*loop, n));
    }
    return analyze_loop(*loop);
}

// ----- suites -----

void SuiteResult::merge(const SuiteResult& other) {
    checks_run += other.checks_run;
    failures += other.failures;
    failure_notes.insert(failure_notes.end(), other.failure_notes.begin(),
                         other.failure_notes.end());
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

namespace {

struct SuiteCtx {
    SuiteResult res;

    void run(const std::string& name, const std::function<bool()>& fn) {
        ++res.checks_run;
        try {
            if (fn()) return;
            ++res.failures;
            res.failure_notes.push_back(name);
        } catch (const std::exception& e) {
            ++res.failures;
            res.failure_notes.push_back(name + ": " + std::string(e.what()));
        }
    }

    void add_row(SuiteRow row) { res.rows.push_back(std::move(row)); }
};

IntMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
    const long r = static_cast<long>(rows.size());
    const long c = static_cast<long>(rows[0].size());
    IntMatrix m(r, c);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return m;
}

bool same_matrix(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

IntegralLoop must_find(const Int& gamma, const Int& n) {
    std::optional<IntegralLoop> loop = find_loop(Gamma(gamma), n);
    if (!loop) throw not_a_cycle_error("corpus: expected a loop from " + to_dec(n));
    return *loop;
}

}  // namespace

SuiteRow det_row(const IntegralLoop& loop) {
    SuiteRow row;
    row.gamma = loop.gamma;
    row.n = loop.start;
    row.rho = loop.even_count;
    row.nu = loop.odd_count;
    const DetsMatch dm = dets_match(loop);
    row.det_m = dm.det_m;
    row.det_r = dm.det_r;
    row.ok = dm.match;
    row.verdicts = dm.match ? "all_pass" : "determinant_match";
    return row;
}

SuiteResult run_corpus(bool inject_failure) {
    SuiteCtx ctx;
    auto& run = ctx;

    // One deliberately corruptible expectation: the negative control must
    // turn the suite red without touching any real computation.
    const Int expected_det_485 = inject_failure ? Int(-31753) : Int(-31752);

    // ----- trajectories -----

    run.run("trajectory of 7 under gamma=1", [] {
        const std::vector<Int> t = trajectory(Gamma(1), 7, 8);
        const std::vector<Int> expect{7, 22, 11, 34, 17, 52, 26, 13};
        return t == expect;
    });
    run.run("ninth iterate of 19 under gamma=1", [] {
        return closed_form_iterate(Gamma(1), 19, 9) == 52 &&
               trajectory(Gamma(1), 19, 10).back() == 52;
    });
    run.run("closed form returns to start on a loop", [] {
        return closed_form_iterate(Gamma(37), 23, 9) == 23;
    });
    run.run("closed form handles even-only patterns", [] {
        return closed_form_iterate(Gamma(5), 48, 4) == 3;
    });
    run.run("parity bits of 23 under gamma=37", [] {
        return characteristic_trajectory(Gamma(37), 23, 9) ==
               std::vector<int>{1, 0, 1, 0, 0, 1, 0, 0, 0};
    });
    run.run("parity bits of 19 under gamma=1", [] {
        return characteristic_trajectory(Gamma(1), 19, 9) ==
               std::vector<int>{1, 0, 1, 0, 0, 0, 1, 0, 1};
    });
    run.run("cycle detection from 7 under gamma=1", [] {
        const CycleSearch c = detect_cycle(Gamma(1), 7);
        return c.found && c.entry == 4 && c.length == 3;
    });
    run.run("cycle detection from 629 under gamma=625", [] {
        const CycleSearch c = detect_cycle(Gamma(625), 629);
        return c.found && c.length == 144;
    });

    // ----- loop structure -----

    run.run("canonical form of the cycle {4,2,1}", [] {
        const IntegralLoop loop = canonicalize({4, 2, 1}, Gamma(1));
        return loop.start == 1 && loop.period == 3 && loop.even_count == 2 &&
               loop.odd_count == 1 && loop.m == std::vector<long>{2};
    });
    run.run("start formula for gamma=175", [] {
        return loop_formula(Gamma(175), 0, {1, 3, 2, 2}) == 157;
    });
    run.run("start formula for gamma=37", [] {
        return loop_formula(Gamma(37), 0, {1, 2, 3}) == 23;
    });
    run.run("start formula for gamma=1", [] { return loop_formula(Gamma(1), 0, {2}) == 1; });
    run.run("structure of the loop of 23 under gamma=37", [] {
        const IntegralLoop loop = must_find(37, 23);
        return loop.start == 23 && loop.even_count == 6 && loop.odd_count == 3 &&
               loop.m == std::vector<long>{1, 2, 3} && telescope_check(loop);
    });
    run.run("structure of the loop of 85 under gamma=47", [] {
        const IntegralLoop loop = must_find(47, 85);
        return loop.start == 85 && loop.even_count == 7 && loop.odd_count == 4 &&
               loop.m == std::vector<long>{1, 2, 1, 3};
    });
    run.run("loop vector of 421 under gamma=13", [] {
        const IntegralLoop loop = anchor_at(must_find(13, 421), 421);
        const LoopVector v = loop_vector(loop);
        return v.entries == std::vector<Int>{421, 319, 485, 367, 557} && telescope_check(loop) &&
               v.index_seq == std::vector<long>{0, 3, 5, 8, 10};
    });
    run.run("loop vector of 133 under gamma=943", [] {
        const IntegralLoop loop = must_find(943, 133);
        return loop_vector(loop).entries == std::vector<Int>{133, 671, 739, 395};
    });
    run.run("similarity relation on loop vectors", [] {
        const std::vector<Int> v{133, 671, 739, 395};
        const std::vector<Int> w{671, 739, 395, 133};
        const VectorRelation sim = vector_relation(v, w);
        const VectorRelation eq = vector_relation(v, v);
        const VectorRelation dist = vector_relation({23, 53, 49}, {19, 47, 89});
        return sim.kind == VectorRelation::Kind::similar && sim.shift == 1 &&
               eq.kind == VectorRelation::Kind::equal &&
               dist.kind == VectorRelation::Kind::distinct;
    });
    run.run("scaling chain from gamma=65455", [] {
        const IntegralLoop a = must_find(65455, 65);
        if (count_scaled(a) != 4) return false;
        const IntegralLoop b = scale_loop(a, 5);
        const IntegralLoop c = scale_loop(a, 13);
        const IntegralLoop d = scale_loop(b, 13);
        return b.gamma == 13091 && b.start == 13 && c.gamma == 5035 && c.start == 5 &&
               d.gamma == 1007 && d.start == 1 && b.m == a.m && c.m == a.m && d.m == a.m;
    });
    run.run("scaling requires a shared factor", [] {
        try {
            scale_loop(must_find(37, 23), 3);
        } catch (const not_divisible_error&) {
            return true;
        }
        return false;
    });
    run.run("scaled-loop count for gamma=175", [] {
        return count_scaled(must_find(175, 133)) == 2;
    });
    run.run("divisibility profile at p=37 for gamma=3367", [] {
        const DivisibilityProfile prof = divisibility_profile(must_find(3367, 18611), 37);
        return prof.a == 1 && prof.b == 1 && prof.c == 1 && prof.d == 1;
    });
    run.run("divisibility profile at p=5 for gamma=625", [] {
        const DivisibilityProfile prof = divisibility_profile(must_find(625, 5), 5);
        return prof.a == 1 && prof.b == 4 && prof.c == 3 && prof.d == 0;
    });
    run.run("divisibility profile for a coprime prime", [] {
        const DivisibilityProfile prof = divisibility_profile(must_find(37, 23), 5);
        return prof.a == 0 && prof.b == 0 && prof.c == 0 && prof.d == 0;
    });
    run.run("two-of-three propagation for gamma=625", [] {
        const IntegralLoop loop = must_find(625, 629);
        if (loop.period != 144 || loop.even_count != 101 || loop.odd_count != 43) return false;
        for (const Int& e : loop_vector(loop).entries)
            if (divides(Int(5), e)) return false;  // no odd member is a multiple of five
        return lemma_alpha_check(loop, 5);
    });
    run.run("two-of-three propagation for gamma=7", [] {
        return lemma_alpha_check(must_find(7, 7), 7);
    });

    // ----- matrices -----

    run.run("shift-scale matrix of 19 under gamma=37", [] {
        const LoopMatrices lm = build_matrices(must_find(37, 19));
        return same_matrix(lm.D, int_matrix({{0, 2, 0}, {0, 0, 2}, {16, 0, 0}}));
    });
    run.run("matrices of the unit loop", [] {
        const LoopMatrices lm = build_matrices(must_find(1, 1));
        return same_matrix(lm.P, int_matrix({{1}})) && same_matrix(lm.L, int_matrix({{4}})) &&
               same_matrix(lm.D, int_matrix({{4}})) && same_matrix(lm.M, int_matrix({{1}}));
    });
    run.run("stacked matrix of 65 under gamma=943", [] {
        const IntegralLoop loop = anchor_at(must_find(943, 65), 65);
        return same_matrix(build_matrices(loop).M,
                           int_matrix({{1, 2, 4, 8}, {1, 2, 4, 512}, {1, 2, 256, 512},
                                       {1, 128, 256, 512}}));
    });
    run.run("stacked matrix of 85 under gamma=47", [] {
        const IntegralLoop loop = anchor_at(must_find(47, 85), 85);
        return same_matrix(build_matrices(loop).M,
                           int_matrix({{1, 2, 8, 16}, {1, 4, 8, 64}, {1, 2, 16, 32},
                                       {1, 8, 16, 64}}));
    });
    run.run("power closure for the loop of 23 under gamma=37", [] {
        const LoopMatrices lm = build_matrices(must_find(37, 23));
        const IntMatrix d3 = d_power(lm, 3);
        const IntMatrix d2 = d_power(lm, 2);
        return same_matrix(d3, int_matrix({{64, 0, 0}, {0, 64, 0}, {0, 0, 64}})) &&
               same_matrix(d2, int_matrix({{0, 0, 8}, {32, 0, 0}, {0, 16, 0}})) &&
               same_matrix(d_power(lm, 1), lm.D);
    });
    run.run("central identity fixtures", [] {
        const LoopMatrices lm23 = build_matrices(must_find(37, 23));
        const IntVector w23 = lm23.M * lm23.three_vec;
        const LoopMatrices lm85 = build_matrices(anchor_at(must_find(47, 85), 85));
        const IntVector w85 = lm85.M * lm85.three_vec;
        return verify_central(must_find(37, 23)) && verify_central(must_find(47, 85)) &&
               verify_central(must_find(1, 1)) && w23(0) == 23 && w23(1) == 53 && w23(2) == 49 &&
               w85(0) == 85 && w85(1) == 151 && w85(2) == 125 && w85(3) == 211;
    });
    run.run("product identities for 133 under gamma=943", [] {
        const IntegralLoop loop = anchor_at(must_find(943, 133), 133);
        const LoopMatrices lm = build_matrices(loop);
        RatMatrix d3 = to_rational(lm.D);
        for (long i = 0; i < d3.rows(); ++i) d3(i, i) -= 3;
        const RatMatrix inv = inverse_exact(d3);
        return dd_identities(loop) && inv(0, 0) == Rat(27, 943) &&
               dd_identities(must_find(1, 1)) && dd_identities(must_find(37, 23));
    });
    run.run("inverse entries for 133 under gamma=943", [] {
        const IntegralLoop loop = anchor_at(must_find(943, 133), 133);
        const RatMatrix inv = inverse_exact(build_matrices(loop).M);
        if (inv(0, 0) != Rat(64, 51) || inv(2, 0) != Rat(-1, 408)) return false;
        const RatVector sums = inverse_row_sums(build_matrices(loop).M);
        for (long i = 0; i < sums.rows(); ++i)
            if (sums(i) != ((i == 0) ? Rat(1) : Rat(0))) return false;
        return true;
    });
    run.run("unimodular transform between gamma=37 loops", [] {
        const IntegralLoop a = must_find(37, 23);
        const IntegralLoop b = must_find(37, 19);
        const RatMatrix t = sl_transform(a, b);
        return maps_vector(t, a, b) && det_exact(t) == 1 && t(0, 0) == Rat(5, 37) &&
               t(0, 1) == 0 && t(0, 2) == Rat(12, 37);
    });
    run.run("row-stochastic transform between gamma=943 loops", [] {
        const IntegralLoop a = anchor_at(must_find(943, 133), 133);
        const IntegralLoop b = anchor_at(must_find(943, 65), 65);
        const RatMatrix t = ors_transform(a, b);
        return maps_vector(t, a, b) && row_sums_one(t) && t(0, 0) == Rat(227, 204);
    });
    run.run("singular stacked matrix for gamma=175", [] {
        const IntegralLoop loop = anchor_at(must_find(175, 133), 133);
        if (det_exact(build_matrices(loop).M) != 0) return false;
        try {
            ors_transform(loop, loop);
        } catch (const singular_matrix_error&) {
            return true;
        }
        return false;
    });
    run.run("affine fixed point fixtures", [] {
        for (const auto& [g, n] : std::vector<std::pair<long, long>>{{37, 23}, {47, 85}, {1, 1}}) {
            const AffineFixedPoint afp = affine_fixed_point(anchor_at(must_find(g, n), n));
            if (!afp.fixes_loop_vector || !afp.first_row_unit || !afp.conjugate_block_form)
                return false;
        }
        return true;
    });

    // ----- determinants -----

    run.run("determinant pair for 19 under gamma=485", [&] {
        const IntegralLoop loop = must_find(485, 19);
        const DetsMatch dm = dets_match(loop);
        ctx.add_row(det_row(loop));
        return dm.det_m == expected_det_485 && dm.det_r == 31752 && dm.radical_integral &&
               dm.match;
    });
    run.run("determinant pair for 19 under gamma=101", [&] {
        const IntegralLoop loop = must_find(101, 19);
        const ZProfile zp = z_profile(loop);
        const DetsMatch dm = dets_match(loop);
        ctx.add_row(det_row(loop));
        return dm.det_m == -1800 && dm.det_r == 1800 && dm.radical_integral && dm.match &&
               !zp.integral && zp.a == std::vector<long>{3, 11, 7};
    });
    run.run("determinant anchored at 18611 under gamma=3367", [&] {
        const IntegralLoop loop = anchor_at(must_find(3367, 18611), 18611);
        const Int det = det_exact(build_matrices(loop).M);
        ctx.add_row(det_row(loop));
        const TheoremVerdict v = mod_gamma_prime_check(loop, 37);
        return det == parse_int("-1910471786496") && mod_nonneg(det, 37) == 0 &&
               v.kind == TheoremVerdict::Kind::singular_mod_p && v.consistent;
    });
    run.run("determinant for 3403 under gamma=4193575", [&] {
        const IntegralLoop loop = anchor_at(must_find(4193575, 3403), 3403);
        const Int det = det_exact(build_matrices(loop).M);
        ctx.add_row(det_row(loop));
        const TheoremVerdict v = mod_gamma_prime_check(loop, 83);
        return det == parse_int("1198591822881410672230400") && mod_nonneg(det, 83) == 0 &&
               v.kind == TheoremVerdict::Kind::singular_mod_p && v.consistent;
    });
    run.run("determinant for 184337 under gamma=1048333", [&] {
        const IntegralLoop loop = anchor_at(must_find(1048333, 184337), 184337);
        if (loop.m != std::vector<long>{6, 2, 6, 3, 3}) return false;
        const ZProfile zp = z_profile(loop);
        const DetsMatch dm = dets_match(loop);
        ctx.add_row(det_row(loop));
        return zp.z == std::vector<Int>{256, 128, 512, 128, 512} &&
               dm.det_m == parse_int("12781822672896") && dm.match;
    });
    run.run("determinant for 373 under gamma=1048333", [&] {
        const IntegralLoop loop = anchor_at(must_find(1048333, 373), 373);
        if (loop.m != std::vector<long>{2, 1, 1, 2, 14}) return false;
        const ZProfile zp = z_profile(loop);
        const DetsMatch dm = dets_match(loop);
        ctx.add_row(det_row(loop));
        return zp.z == std::vector<Int>{8, 8192, 2048, 256, 32} &&
               dm.det_m == parse_int("36861972294903300096") && dm.match;
    });
    run.run("repeated-block loops are singular", [&] {
        const IntegralLoop seven = loop_from_m(Gamma(7), {2, 2});
        const IntegralLoop thirty7 = loop_from_m(Gamma(37), {2, 2, 2});
        ctx.add_row(det_row(seven));
        ctx.add_row(det_row(thirty7));
        if (!same_matrix(build_matrices(seven).M, int_matrix({{1, 4}, {1, 4}}))) return false;
        const TheoremVerdict v7 = prop_mod_gamma_check(seven);
        const TheoremVerdict v37 = prop_mod_gamma_check(thirty7);
        return det_exact(build_matrices(seven).M) == 0 &&
               det_exact(build_matrices(thirty7).M) == 0 &&
               v7.kind == TheoremVerdict::Kind::singular_mod_p && v7.consistent &&
               v37.kind == TheoremVerdict::Kind::singular_mod_p && v37.consistent;
    });
    run.run("prime-modulus hypothesis fails on composite", [] {
        const TheoremVerdict v = prop_mod_gamma_check(must_find(943, 133));
        return v.kind == TheoremVerdict::Kind::hypothesis_not_met;
    });
    run.run("prime-power boundary case for gamma=625", [] {
        const IntegralLoop loop = must_find(625, 5);
        const TheoremVerdict v = mod_gamma_prime_check(loop, 5);
        return v.kind == TheoremVerdict::Kind::hypothesis_not_met &&
               v.reason == "boundary case c = b - a" &&
               det_exact(build_matrices(loop).M) == 1;
    });

    // ----- circulant -----

    run.run("run-weight profile for gamma=485", [] {
        const ZProfile zp = z_profile(must_find(485, 19));
        return zp.integral && zp.z == std::vector<Int>{2, 32, 8} &&
               zp.a == std::vector<long>{3, 15, 9};
    });
    run.run("uniform run lengths give equal weights", [] {
        const ZProfile zp = z_profile(loop_from_m(Gamma(37), {2, 2, 2}));
        return zp.integral && zp.z == std::vector<Int>{4, 4, 4};
    });
    run.run("circulant layout", [] {
        const IntMatrix r = circulant_matrix({2, 32, 8});
        const IntMatrix g = circulant_matrix({0, 1, 2, 3});
        return same_matrix(r, int_matrix({{2, 32, 8}, {8, 2, 32}, {32, 8, 2}})) &&
               g(1, 0) == 3 && g(1, 1) == 0 && g(1, 2) == 1 && g(1, 3) == 2;
    });
    run.run("resultant route to the circulant determinant", [] {
        return circulant_det_resultant({2, 32, 8}) == 31752 &&
               circulant_det_resultant({2, 32, 8}) == det_exact(circulant_matrix({2, 32, 8})) &&
               circulant_det_resultant({1, 1, 1}) == 0;
    });
    run.run("vandermonde products", [] {
        return vandermonde_det({Rat(1), Rat(5)}) == 4 &&
               vandermonde_det({Rat(2), Rat(2), Rat(7)}) == 0 &&
               vandermonde_det({Rat(1), Rat(2), Rat(3)}) == 2;
    });
    run.run("circulant ranks", [] {
        return circulant_rank({1, 1, 1}) == 1 && circulant_rank({2, 32, 8}) == 3 &&
               circulant_rank({2, 32, 8}, 5) == 3 &&
               rank_mod_p(circulant_matrix({2, 32, 8}), 5) == 3 &&
               rank_exact(circulant_matrix({1, 1, 1})) == 1;
    });
    run.run("primitive-root conditions", [] {
        return primitive_root_check(13, 5) && !primitive_root_check(11, 5) &&
               primitive_root_check(5, 3);
    });
    run.run("polynomial gcd fixtures", [] {
        const PolyModP cyc = make_cyclotomic_span(5, 3);
        const PolyModP f1 = make_poly(5, {1, 1, 1});
        const PolyModP f2 = make_poly(5, {2, 32, 8});
        const PolyModP g1 = poly_gcd_fp(f1, cyc);
        const PolyModP g2 = poly_gcd_fp(f2, cyc);
        const PolyModP g3 = poly_gcd_fp(make_poly(5, {2, 4}), make_poly(5, {}));
        return poly_degree(g1) == 2 && poly_degree(g2) == 0 &&
               g3.coeffs == std::vector<Int>{3, 1};
    });
    run.run("singularity criterion for gamma=485", [] {
        const std::vector<TheoremVerdict> vs = theorem_x_check(must_find(485, 19));
        if (vs.size() != 2) return false;  // 485 = 5 * 97... loop denominator 2^9-3^3
        const TheoremVerdict& v5 = vs[0];
        const TheoremVerdict& v97 = vs[1];
        return v5.p == 5 && v5.kind == TheoremVerdict::Kind::nonsingular_mod_p && v5.consistent &&
               v97.p == 97 && v97.kind == TheoremVerdict::Kind::hypothesis_not_met;
    });
    run.run("singularity criterion for gamma=1048333", [] {
        const IntegralLoop loop = anchor_at(must_find(1048333, 184337), 184337);
        const std::vector<TheoremVerdict> vs = theorem_x_check(loop);
        if (vs.size() != 3) return false;  // 1048333 = 11 * 13 * 7331
        bool ok = true;
        for (const TheoremVerdict& v : vs) {
            if (!v.consistent) ok = false;
            if (v.p == 13 && v.kind != TheoremVerdict::Kind::nonsingular_mod_p) ok = false;
            if (v.p == 11 && v.kind != TheoremVerdict::Kind::hypothesis_not_met) ok = false;
            if (v.p == 7331 && v.kind != TheoremVerdict::Kind::hypothesis_not_met) ok = false;
        }
        return ok;
    });

    // ----- enumeration -----

    run.run("composition counts and order", [] {
        const std::vector<Composition> c94 = compositions(9, 4);
        const std::vector<Composition> c63 = compositions(6, 3);
        return c94.size() == 56 && composition_count(9, 4) == 56 && c63.size() == 10 &&
               c63.front().parts == std::vector<long>{1, 1, 4} &&
               c63.back().parts == std::vector<long>{4, 1, 1} &&
               compositions(2, 1).size() == 1;
    });
    run.run("search at rho=9 nu=4 gamma=431", [] {
        const std::vector<IntegralLoop> loops = search_loops(9, 4, Int(431));
        if (loops.size() != 56) return false;
        const std::vector<std::vector<size_t>> classes = rotation_classes(loops);
        if (classes.size() != 14) return false;
        for (const auto& cls : classes)
            if (cls.size() != 4) return false;
        return true;
    });
    run.run("search at rho=6 nu=3 gamma=37", [] {
        const std::vector<IntegralLoop> loops = search_loops(6, 3, Int(37));
        if (loops.size() != 10) return false;
        std::set<Int> starts;
        for (const IntegralLoop& l : loops) starts.insert(l.start);
        const std::set<Int> expect{19, 23, 29, 31, 37, 47, 49, 53, 65, 89};
        std::vector<size_t> sizes;
        for (const auto& cls : rotation_classes(loops)) sizes.push_back(cls.size());
        std::sort(sizes.begin(), sizes.end());
        return starts == expect && sizes == std::vector<size_t>{1, 3, 3, 3};
    });
    run.run("search at rho=2 nu=1 gamma=1", [] {
        const std::vector<IntegralLoop> loops = search_loops(2, 1, Int(1));
        return loops.size() == 1 && loops[0].start == 1 && loops[0].m == std::vector<long>{2};
    });
    run.run("pattern count closed form matches the oracle", [] {
        const std::vector<long> expect{1, 2, 4, 10, 26, 80, 246, 810, 2704, 9252};
        for (long n = 1; n <= 10; ++n) {
            if (count_F(n) != expect[static_cast<size_t>(n - 1)]) return false;
            if (count_F(n) != count_F_brute(n)) return false;
        }
        return true;
    });
    run.run("exponent matrix determinants", [] {
        const std::vector<long> expect{1, 9, 96, 1250, 19440};  // n = 2..6
        for (long n = 2; n <= 6; ++n) {
            IntMatrix theta(n, n);
            for (long i = 1; i <= n; ++i)
                for (long j = 1; j <= n; ++j) theta(i - 1, j - 1) = ((i - j + 1) % n + n) % n;
            if (det_exact(theta) != expect[static_cast<size_t>(n - 2)]) return false;
            if (!equal_mat(exponent_inverse_matrix(n), inverse_exact(exponent_matrix(n))))
                return false;
        }
        return true;
    });
    run.run("exponent map round trip", [] {
        const std::vector<Rat> w = exponent_map({3, 0, 0});
        if (w != std::vector<Rat>{Rat(1), Rat(2), Rat(0)}) return false;
        const std::vector<Rat> y = exponent_map_inverse(w);
        return y == std::vector<Rat>{Rat(3), Rat(0), Rat(0)} &&
               exponent_map({1}) == std::vector<Rat>{Rat(0)} &&
               exponent_map_inverse({Rat(0)}) == std::vector<Rat>{Rat(1)};
    });
    run.run("ratio classifications", [] {
        return ratio_bound_check(2, 1) == RatioBound::admissible &&
               ratio_bound_check(9, 4) == RatioBound::above_two &&
               ratio_bound_check(3, 2) == RatioBound::below_log_bound;
    });

    return ctx.res;
}

// ----- sweep -----

namespace {

// Full per-loop property battery; returns failed check names.
std::vector<std::string> check_loop_properties(const IntegralLoop& loop) {
    std::vector<std::string> failed;
    auto expect = [&](const char* name, bool ok) {
        if (!ok) failed.push_back(name);
    };

    try {
        validate_loop(loop);
    } catch (const error&) {
        failed.push_back("structure");
    }
    expect("telescope", telescope_check(loop));
    {
        const Rat f = loop_formula(Gamma(loop.gamma), 0, loop.m);
        expect("formula_round_trip", is_integral(f) && Int(f.get_num()) == loop.start);
    }
    expect("central_identity", verify_central(loop));
    expect("product_identities", dd_identities(loop));

    const LoopMatrices lm = build_matrices(loop);
    {
        // exponent rule vs naive powers, and closure at k = nu
        IntMatrix naive = lm.D;
        bool rule_ok = true;
        for (long k = 1; k <= loop.odd_count; ++k) {
            if (!same_matrix(d_power(lm, k), naive)) rule_ok = false;
            naive = naive * lm.D;
        }
        const IntMatrix dn = d_power(lm, loop.odd_count);
        const Int p2 = pow2(static_cast<unsigned long>(loop.even_count));
        for (long i = 0; i < dn.rows(); ++i)
            for (long j = 0; j < dn.cols(); ++j)
                if (dn(i, j) != ((i == j) ? p2 : Int(0))) rule_ok = false;
        expect("power_closure", rule_ok);
    }

    const DetsMatch dm = dets_match(loop);
    expect("determinant_match", dm.match);
    {
        const ZProfile zp = z_profile(loop);
        if (zp.integral) {
            // resultant route agrees with elimination and with the radical ring
            const Int by_res = circulant_det_resultant(zp.z);
            const Int by_elim = det_exact(build_R_integer(zp));
            expect("circulant_resultant", by_res == by_elim && abs(by_res) == abs(dm.det_r));
        }
    }

    for (const Int& p : relevant_primes(loop)) {
        try {
            divisibility_profile(loop, p);
        } catch (const error&) {
            failed.push_back("divisibility_profile");
        }
        expect("two_of_three", lemma_alpha_check(loop, p));
        expect("prime_power_singularity", mod_gamma_prime_check(loop, p).consistent);
    }
    {
        // uniform multiplicity across consecutive odd pairs for primes of s
        const LoopVector v = loop_vector(loop);
        Int s = v.entries[0];
        for (const Int& e : v.entries) s = gcd_int(s, e);
        for (const Int& p : prime_divisors(s)) {
            if (p == 2) continue;
            long first = -1;
            bool uniform = true;
            const long nu = static_cast<long>(v.entries.size());
            for (long j = 0; j < nu; ++j) {
                const long a = std::min(multiplicity(v.entries[static_cast<size_t>(j)], p),
                                        multiplicity(v.entries[static_cast<size_t>((j + 1) % nu)], p));
                if (first < 0) first = a;
                if (a != first) uniform = false;
            }
            expect("uniform_multiplicity", uniform);
        }
    }
    for (const TheoremVerdict& v : theorem_x_check(loop))
        expect("singularity_criterion", v.consistent);
    expect("prime_modulus_singularity", prop_mod_gamma_check(loop).consistent);

    if (dm.det_m != 0) {
        const RatVector sums = inverse_row_sums(lm.M);
        bool ok = true;
        for (long i = 0; i < sums.rows(); ++i)
            if (sums(i) != ((i == 0) ? Rat(1) : Rat(0))) ok = false;
        expect("inverse_row_sums", ok);
        const AffineFixedPoint afp = affine_fixed_point(loop);
        expect("affine_fixed_point",
               afp.fixes_loop_vector && afp.first_row_unit && afp.conjugate_block_form);
    }
    return failed;
}

}  // namespace

SuiteResult run_sweep(long max_rho, long max_nu, int jobs) {
    if (max_nu < 1 || max_rho < 1 || max_nu > 12 || max_rho > 64)
        throw invalid_argument_error("run_sweep: bounds out of range");
    SuiteCtx ctx;

    for (long nu = 1; nu <= max_nu; ++nu) {
        for (long rho = nu; rho <= max_rho; ++rho) {
            if (pow2(static_cast<unsigned long>(rho)) <= pow3(static_cast<unsigned long>(nu)))
                continue;
            const std::vector<IntegralLoop> loops = search_loops(rho, nu, {}, jobs);

            for (const IntegralLoop& loop : loops) {
                ++ctx.res.checks_run;
                const std::vector<std::string> failed = check_loop_properties(loop);
                SuiteRow row = det_row(loop);
                if (!failed.empty()) {
                    ++ctx.res.failures;
                    std::string joined;
                    for (const std::string& f : failed) {
                        if (!joined.empty()) joined += ",";
                        joined += f;
                    }
                    row.ok = false;
                    row.verdicts = joined;
                    ctx.res.failure_notes.push_back("loop gamma=" + to_dec(loop.gamma) +
                                                    " n=" + to_dec(loop.start) + ": " + joined);
                }
                ctx.add_row(std::move(row));
            }

            // transform laws on a sample of loops with invertible M
            std::vector<const IntegralLoop*> invertible;
            for (const IntegralLoop& loop : loops) {
                if (invertible.size() >= 3) break;
                if (det_exact(build_matrices(loop).M) != 0) invertible.push_back(&loop);
            }
            if (!invertible.empty()) {
                ctx.run("transform laws rho=" + std::to_string(rho) +
                            " nu=" + std::to_string(nu),
                        [&] {
                            const IntegralLoop& a = *invertible[0];
                            if (!is_identity(sl_transform(a, a))) return false;
                            if (!is_identity(ors_transform(a, a))) return false;
                            if (invertible.size() < 2) return true;
                            const IntegralLoop& b = *invertible[1];
                            const RatMatrix sab = sl_transform(a, b);
                            const RatMatrix oab = ors_transform(a, b);
                            if (!maps_vector(sab, a, b) || det_exact(sab) != 1) return false;
                            if (!maps_vector(oab, a, b) || !row_sums_one(oab)) return false;
                            if (!is_identity(sab * sl_transform(b, a))) return false;
                            if (!is_identity(oab * ors_transform(b, a))) return false;
                            if (invertible.size() < 3) return true;
                            const IntegralLoop& c = *invertible[2];
                            if (!equal_mat(sl_transform(b, c) * sab, sl_transform(a, c)))
                                return false;
                            return equal_mat(ors_transform(b, c) * oab, ors_transform(a, c));
                        });
            }
        }
    }
    return ctx.res;
}

std::string csv_header() { return "gamma,n,rho,nu,detM,detR,verdicts"; }

std::string to_csv_row(const SuiteRow& row) {
    std::ostringstream os;
    os << to_dec(row.gamma) << ',' << to_dec(row.n) << ',' << row.rho << ',' << row.nu << ','
       << to_dec(row.det_m) << ',' << to_dec(row.det_r) << ',' << row.verdicts;
    return os.str();
}

}  // namespace loopforge
