// Acceptance gate: eight criteria, one PASS/FAIL line each, nonzero exit
// if any fail. Budgets are pinned constants, not knobs.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "specseq/harness.hpp"

using namespace specseq;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double c1_budget_s = 1.0;
constexpr double c2_budget_s = 120.0;

int failed_criteria = 0;

void report(int idx, const std::string& label, bool ok, double secs,
            const std::string& note = "") {
    std::cout << "C" << idx << " " << label << ": " << (ok ? "PASS" : "FAIL") << " ["
              << std::fixed << std::setprecision(2) << secs << "s]"
              << (note.empty() ? "" : " " + note) << "\n";
    if (!ok)
        ++failed_criteria;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename F>
int catalog_degeneration(const DoubleComplex<F>& c) {
    auto ft = totalize(c);
    ZBTable<F> t(ft);
    return degeneration_page(t);
}

// C1: the five named complexes against every frozen catalog value.
void criterion_catalog() {
    const auto t0 = Clock::now();
    Rationals q;
    bool ok = true;
    auto expect = [&](bool cond) { ok = ok && cond; };

    auto dot = make_dot(q, 0, 0);
    auto sq = make_square(q, 0, 0);
    auto hz = make_zigzag(q, ZigzagShape::HZ, 0, 0);
    auto vz = make_zigzag(q, ZigzagShape::VZ, 0, 0);
    auto l3 = make_zigzag(q, ZigzagShape::L3, 0, 0);

    expect(catalog_degeneration(dot) == 0);
    expect(catalog_degeneration(sq) == 1);
    expect(catalog_degeneration(hz) == 2);
    expect(catalog_degeneration(vz) == 1);
    expect(catalog_degeneration(l3) == 1);

    for (const auto* c : {&dot, &sq, &hz, &vz, &l3}) {
        expect(evaluate_property(q, *c, Property::page_oracle).outcome == Outcome::pass);
        expect(evaluate_property(q, *c, Property::convergence).outcome == Outcome::pass);
        expect(evaluate_property(q, *c, Property::eqdeg_agreement).outcome ==
               Outcome::pass);
        expect(evaluate_property(q, *c, Property::main_theorem).outcome != Outcome::fail);
    }

    {
        auto ft = totalize(sq);
        ZBTable t(ft);
        auto p0 = page(t, 0);
        expect(p0.dim(0, 0) == 1 && p0.dim(1, 0) == 1 && p0.dim(0, 1) == 1 &&
               p0.dim(1, 1) == 1);
        auto p1 = page(t, 1);
        expect(p1.dim(0, 0) == 0 && p1.dim(1, 0) == 0 && p1.dim(0, 1) == 0 &&
               p1.dim(1, 1) == 0);
    }
    {
        auto ft = totalize(hz);
        ZBTable t(ft);
        expect(page(t, 1).dim(0, 0) == 1 && page(t, 1).dim(1, 0) == 1);
        expect(page(t, 2).dim(0, 0) == 0 && page(t, 2).dim(1, 0) == 0);
    }
    {
        auto ft = totalize(l3);
        ZBTable t(ft);
        auto p1 = page(t, 1);
        expect(p1.dim(0, 1) == 1 && p1.dim(1, 1) == 0 && p1.dim(1, 0) == 0);
        expect(infinity_page(t).dims.at({0, 1}) == 1);
    }

    expect(dd_lemma(dot).global);
    expect(dd_lemma(sq).global);
    auto hzdd = dd_lemma(hz);
    expect(!hzdd.global && !hzdd.cells.at({1, 0}).pass);
    auto vzdd = dd_lemma(vz);
    expect(!vzdd.global && !vzdd.cells.at({0, 1}).pass);
    auto l3dd = dd_lemma(l3);
    expect(!l3dd.global && !l3dd.cells.at({1, 1}).pass);

    {
        auto ft = totalize(hz);
        ZBTable t(ft);
        auto w = obstruction_nonempty(t, 0, 0, 1);
        expect(w.has_value() && w->components.size() == 1 &&
               w->components[0] == Matrix<Rationals>::Vec{BigRational(1)} &&
               check_witness(ft, *w));
        expect(!obstruction_nonempty(t, 1, 0, 1).has_value());
        expect(!obstruction_nonempty(t, 0, 0, 2).has_value());
    }
    {
        auto ft = totalize(sq);
        ZBTable t(ft);
        auto w0 = obstruction_nonempty(t, 0, 0, 0);
        expect(w0.has_value() && check_witness(ft, *w0));
        for (const auto& [key, nonempty] : obstruction_table(t))
            if (std::get<2>(key) >= 1)
                expect(!nonempty);
    }
    {
        auto ft = totalize(dot);
        ZBTable t(ft);
        for (const auto& [key, nonempty] : obstruction_table(t))
            expect(!nonempty);
    }

    auto check_eqdeg = [&](const auto& c, int want) {
        auto ft = totalize(c);
        ZBTable<Rationals> t(ft);
        auto v = eqdeg_verdict(t);
        expect(v.agree && v.r_deg_by_pages == want && v.r_deg_by_obstructions == want);
    };
    check_eqdeg(dot, 0);
    check_eqdeg(sq, 1);
    check_eqdeg(hz, 2);
    check_eqdeg(vz, 1);
    check_eqdeg(l3, 1);

    auto mt_sq = main_theorem_check(sq);
    expect(mt_sq.hypotheses_hold && mt_sq.conclusion_holds && mt_sq.consistent);
    auto mt_hz = main_theorem_check(hz);
    expect(!mt_hz.hypotheses_hold && !mt_hz.conclusion_holds && mt_hz.consistent);
    for (const auto* c : {&dot, &vz, &l3})
        expect(main_theorem_check(*c).consistent);

    const double secs = seconds_since(t0);
    report(1, "canonical catalog", ok && secs < c1_budget_s, secs,
           "budget " + std::to_string(static_cast<int>(c1_budget_s)) + "s");
}

// C2 + C3: two-path page oracle and convergence on the same 1000 seeded
// complexes, fields rotating Q, F2, F3.
void criterion_two_path_and_convergence() {
    const auto t0 = Clock::now();
    std::size_t page_fails = 0, conv_fails = 0;
    double conv_secs = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
        const FieldSpec spec = i % 3 == 0   ? FieldSpec::rationals()
                               : i % 3 == 1 ? FieldSpec::prime(2)
                                            : FieldSpec::prime(3);
        with_field(spec, [&](auto field) {
            auto c = random_complex(field, Recipe::mixed(), 9000 + i);
            if (evaluate_property(field, c, Property::page_oracle).outcome ==
                Outcome::fail)
                ++page_fails;
            const auto tc = Clock::now();
            if (evaluate_property(field, c, Property::convergence).outcome ==
                Outcome::fail)
                ++conv_fails;
            conv_secs += seconds_since(tc);
        });
    }
    const double secs = seconds_since(t0);
    report(2, "two-path page oracle x1000", page_fails == 0 && secs < c2_budget_s,
           secs - conv_secs,
           "fails " + std::to_string(page_fails) + ", budget " +
               std::to_string(static_cast<int>(c2_budget_s)) + "s");
    report(3, "convergence to total cohomology x1000", conv_fails == 0, conv_secs,
           "fails " + std::to_string(conv_fails));
}

// C4: degeneration statement on the square-rich population.
void criterion_main_theorem() {
    const auto t0 = Clock::now();
    Rationals q;
    Campaign camp;
    camp.seed = 41;
    camp.trials = 1000;
    camp.recipe = Recipe::squares_dots();
    camp.properties = {Property::main_theorem};
    auto rep = run_campaign(q, camp);
    const auto& tally = rep.tallies[0].second;
    const double vacuous_rate = static_cast<double>(tally.vacuous) / camp.trials;
    std::ostringstream note;
    note << "fails " << tally.fail << ", vacuous " << std::fixed << std::setprecision(1)
         << 100 * vacuous_rate << "%";
    report(4, "degeneration theorem x1000", tally.fail == 0 && vacuous_rate < 0.5,
           seconds_since(t0), note.str());
}

// C5: pages-derived vs obstruction-derived degeneration page.
void criterion_eqdeg() {
    const auto t0 = Clock::now();
    std::size_t fails = 0;
    auto run = [&](const FieldSpec& spec, std::uint64_t seed, std::size_t trials) {
        with_field(spec, [&](auto field) {
            Campaign camp;
            camp.seed = seed;
            camp.trials = trials;
            camp.recipe = Recipe::mixed();
            camp.properties = {Property::eqdeg_agreement};
            fails += run_campaign(field, camp).tallies[0].second.fail;
        });
    };
    run(FieldSpec::rationals(), 51, 334);
    run(FieldSpec::prime(2), 52, 333);
    run(FieldSpec::prime(3), 53, 333);
    report(5, "degeneration page agreement x1000", fails == 0, seconds_since(t0),
           "fails " + std::to_string(fails));
}

// C6: comparison-map proposition and both witness lemmas, 1000 complexes
// per suite; every extracted witness is re-verified inside the evaluators.
void criterion_lemma_suites() {
    const auto t0 = Clock::now();
    bool ok = true;
    std::vector<std::string> notes;
    for (Property prop :
         {Property::prop_alpha_beta, Property::lemma_alpha, Property::lemma_beta}) {
        std::size_t fails = 0, pass = 0;
        std::uint64_t seed = 61;
        for (const FieldSpec& spec :
             {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3)}) {
            with_field(spec, [&](auto field) {
                Campaign camp;
                camp.seed = seed * 101 + static_cast<std::uint64_t>(prop);
                camp.trials = spec == FieldSpec::rationals() ? 334 : 333;
                camp.recipe = Recipe::mixed();
                camp.properties = {prop};
                const auto& tally = run_campaign(field, camp).tallies[0].second;
                fails += tally.fail;
                pass += tally.pass;
            });
            ++seed;
        }
        ok = ok && fails == 0;
        if (prop == Property::lemma_alpha) {
            ok = ok && pass > 0;
            notes.push_back("alpha fired on " + std::to_string(pass) + " complexes");
        }
        notes.push_back(std::string(property_name(prop)) + " fails " +
                        std::to_string(fails));
    }
    std::string note;
    for (const auto& n : notes)
        note += (note.empty() ? "" : ", ") + n;
    report(6, "witness lemma suites x1000 each", ok, seconds_since(t0), note);
}

// C7 helpers: random matrices over each field, including rational entries
// around 10^30 in magnitude.
template <typename F, typename Gen>
Matrix<F> random_matrix(const F& field, std::mt19937_64& rng, std::size_t rows,
                        std::size_t cols, Gen&& entry) {
    Matrix<F> m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (rng() % 10 < 7)
                m.at(i, j) = entry();
    return m;
}

BigRational random_big_rational(std::mt19937_64& rng) {
    auto digits = [&](std::size_t n) {
        std::string s;
        s += static_cast<char>('1' + rng() % 9);
        for (std::size_t i = 1; i < n; ++i)
            s += static_cast<char>('0' + rng() % 10);
        return s;
    };
    BigInt num(digits(30));
    BigInt den(digits(30));
    BigRational v = BigRational(num) / BigRational(den);
    return rng() % 2 ? v : -v;
}

template <typename F, typename Gen>
bool kernel_suite_step(const F& field, std::mt19937_64& rng, Gen&& entry) {
    const std::size_t rows = rng() % 7, cols = rng() % 7;
    auto a = random_matrix(field, rng, rows, cols, entry);
    auto b = random_matrix(field, rng, rows, rng() % 7, entry);
    auto d = random_matrix(field, rng, cols, rng() % 7, entry);

    if (rank(a) + kernel(a).dim() != a.cols())
        return false;

    auto r1 = rref(a);
    if (rref(r1.mat).mat != r1.mat || r1.rank != rank(r1.mat))
        return false;

    auto u = image(a);
    if (Subspace<F>::span(u.basis()) != u)
        return false;

    auto v = image(b);
    auto w = image(a * d); // contained in u by construction
    if (sum(u, v).dim() + intersect(u, v).dim() != u.dim() + v.dim())
        return false;
    if (intersect(u, sum(v, w)) != sum(intersect(u, v), w))
        return false;
    return true;
}

void criterion_kernel_suite() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(71);
    Rationals q;
    PrimeField f2(2), f3(3);
    std::size_t fails = 0;
    for (std::size_t i = 0; i < 10000; ++i) {
        bool ok = true;
        switch (i % 4) {
        case 0:
            ok = kernel_suite_step(q, rng, [&] {
                return BigRational(static_cast<long>(rng() % 19) - 9);
            });
            break;
        case 1:
            ok = kernel_suite_step(q, rng, [&] { return random_big_rational(rng); });
            break;
        case 2:
            ok = kernel_suite_step(f2, rng, [&] { return rng() % 2; });
            break;
        default:
            ok = kernel_suite_step(f3, rng, [&] { return rng() % 3; });
            break;
        }
        if (!ok)
            ++fails;
    }
    report(7, "linear-algebra kernel x10000", fails == 0, seconds_since(t0),
           "fails " + std::to_string(fails) + ", incl. 2500 runs at 1e30 magnitude");
}

// C8: byte-identical reports under equal seeds, and every seeded bug is
// caught by the campaign properties.
void criterion_determinism_and_faults() {
    const auto t0 = Clock::now();
    Rationals q;
    PrimeField f2(2);

    Campaign camp;
    camp.seed = 2718;
    camp.trials = 200;
    camp.recipe = Recipe::mixed();
    camp.properties = {Property::eqdeg_agreement, Property::main_theorem};
    const bool deterministic = run_campaign(q, camp).render() ==
                                   run_campaign(q, camp).render() &&
                               run_campaign(f2, camp).render() ==
                                   run_campaign(f2, camp).render();

    auto sq = make_square(q, 0, 0);
    auto hz = make_zigzag(q, ZigzagShape::HZ, 0, 0);
    auto sweep_failures = [&] {
        std::size_t n = 0;
        for (const auto* c : {&sq, &hz})
            for (Property p : {Property::page_oracle, Property::eqdeg_agreement})
                if (evaluate_property(q, *c, p).outcome == Outcome::fail)
                    ++n;
        return n;
    };

    const bool clean_baseline = sweep_failures() == 0;
    std::size_t detected = 0;
    for (auto kind : {faults::Kind::z_shift, faults::Kind::b_shift,
                      faults::Kind::totalize_sign, faults::Kind::quotient_skip,
                      faults::Kind::degeneration_early}) {
        faults::Scoped guard(kind);
        if (sweep_failures() >= 1)
            ++detected;
    }

    report(8, "determinism and fault injection",
           deterministic && clean_baseline && detected == 5, seconds_since(t0),
           "faults detected " + std::to_string(detected) + "/5");
}

} // namespace

int main() {
    criterion_catalog();
    criterion_two_path_and_convergence();
    criterion_main_theorem();
    criterion_eqdeg();
    criterion_lemma_suites();
    criterion_kernel_suite();
    criterion_determinism_and_faults();
    if (failed_criteria != 0) {
        std::cout << failed_criteria << " criteria failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
