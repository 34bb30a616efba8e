#ifndef SPECSEQ_HARNESS_HPP
#define SPECSEQ_HARNESS_HPP

#include <chrono>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "specseq/generators.hpp"
#include "specseq/io.hpp"

namespace specseq {

/// The machine-checkable statements the campaigns exercise. The first two
/// are the engine's internal consistency oracles; the rest anchor to the
/// named results the library exists to verify.
enum class Property {
    page_oracle,
    convergence,
    main_theorem,
    eqdeg_agreement,
    prop_alpha_beta,
    lemma_alpha,
    lemma_beta,
};

inline const char* property_name(Property p) {
    switch (p) {
    case Property::page_oracle: return "page-oracle";
    case Property::convergence: return "convergence";
    case Property::main_theorem: return "main";
    case Property::eqdeg_agreement: return "eqdeg";
    case Property::prop_alpha_beta: return "prop-alpha-beta";
    case Property::lemma_alpha: return "lemma-alpha";
    case Property::lemma_beta: return "lemma-beta";
    }
    return "?";
}

inline std::optional<Property> property_from_name(std::string_view s) {
    for (Property p : {Property::page_oracle, Property::convergence, Property::main_theorem,
                       Property::eqdeg_agreement, Property::prop_alpha_beta,
                       Property::lemma_alpha, Property::lemma_beta})
        if (s == property_name(p))
            return p;
    return std::nullopt;
}

inline std::vector<Property> all_properties() {
    return {Property::page_oracle,     Property::convergence, Property::main_theorem,
            Property::eqdeg_agreement, Property::prop_alpha_beta,
            Property::lemma_alpha,     Property::lemma_beta};
}

enum class Outcome { pass, vacuous, fail };

struct Evaluation {
    Outcome outcome = Outcome::pass;
    std::string detail;
};

namespace detail {

inline std::string cell_str(int p, int q) {
    return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

template <typename F>
Evaluation evaluate_impl(const DoubleComplex<F>& c, Property prop) {
    auto fail = [](std::string d) { return Evaluation{Outcome::fail, std::move(d)}; };
    auto ft = totalize(c);
    ZBTable<F> t(ft);
    const int cutoff = page_cutoff(ft);

    std::vector<CellKey> cells;
    for (int k = 0; k <= ft.width(); ++k)
        for (const auto& b : ft.blocks(k))
            cells.push_back({b.p, b.q});

    switch (prop) {
    case Property::page_oracle: {
        auto prev = page(t, 0);
        for (int r = 0; r <= cutoff; ++r) {
            for (const auto& [k, cell] : prev.cells) {
                auto tgt = prev.cells.find({k.first + r, k.second - r + 1});
                if (tgt != prev.cells.end() && !(tgt->second.d * cell.d).is_zero())
                    return fail("d_" + std::to_string(r) + " does not square to zero at " +
                                cell_str(k.first, k.second));
            }
            auto next = page(t, r + 1);
            if (!same_dims(next.dims(), page_via_cohomology(prev)))
                return fail("quotient dims of page " + std::to_string(r + 1) +
                            " disagree with cohomology of page " + std::to_string(r));
            for (const auto& [k, cell] : next.cells)
                if (cell.dim > prev.dim(k.first, k.second))
                    return fail("page dims grow at " + cell_str(k.first, k.second));
            prev = std::move(next);
        }
        if (!same_dims(prev.dims(), infinity_page(t).dims))
            return fail("page beyond the cutoff differs from the infinity page");
        return {};
    }
    case Property::convergence: {
        std::map<int, std::size_t> diag;
        for (const auto& [k, d] : infinity_page(t).dims)
            diag[k.first + k.second] += d;
        for (int k = 0; k <= ft.width(); ++k)
            if (diag[k] != cohomology_dim(ft, k))
                return fail("E_infinity diagonal " + std::to_string(k) +
                            " does not sum to the cohomology dimension");
        return {};
    }
    case Property::main_theorem: {
        auto res = main_theorem_check(c);
        if (!res.consistent)
            return fail("dd-lemma holds and the sequence is not degenerate at E_0, "
                        "yet it fails to degenerate at E_1");
        return {res.hypotheses_hold ? Outcome::pass : Outcome::vacuous, {}};
    }
    case Property::eqdeg_agreement: {
        auto v = eqdeg_verdict(t);
        if (!v.agree)
            return fail("degeneration page by pages = " +
                        std::to_string(v.r_deg_by_pages) + " but by obstructions = " +
                        std::to_string(v.r_deg_by_obstructions));
        return {};
    }
    case Property::prop_alpha_beta: {
        for (int r = 0; r <= cutoff; ++r) {
            bool beta_all = true;
            for (auto [p, q] : cells)
                beta_all = beta_all && beta_iso(t, p, q, r);
            const bool dead = page(t, r).all_d_zero();
            if (dead != beta_all)
                return fail("d_" + std::to_string(r) + (dead ? " vanishes" : " is nonzero") +
                            " but beta says otherwise");
            if (dead)
                for (auto [p, q] : cells)
                    if (!alpha_iso(t, p, q, r))
                        return fail("d_" + std::to_string(r) +
                                    " vanishes but alpha is not an isomorphism at " +
                                    cell_str(p, q));
        }
        return {};
    }
    case Property::lemma_alpha: {
        bool fired = false;
        for (auto [p, q] : cells)
            for (int r = 1; r <= cutoff; ++r) {
                if (alpha_iso(t, p, q, r))
                    continue;
                fired = true;
                auto w = obstruction_nonempty(t, p, q, r);
                if (!w)
                    return fail("alpha fails at " + cell_str(p, q) + " r=" +
                                std::to_string(r) + " but the obstruction set is empty");
                if (!check_witness(ft, *w))
                    return fail("extracted witness at " + cell_str(p, q) + " r=" +
                                std::to_string(r) + " fails reverification");
            }
        return {fired ? Outcome::pass : Outcome::vacuous, {}};
    }
    case Property::lemma_beta: {
        for (auto [p, q] : cells) {
            if (obstruction_nonempty(t, p, q - 1, 0).has_value() == beta_iso(t, p, q, 0))
                return fail("page-0 obstruction/beta biconditional broken at " +
                            cell_str(p, q));
            for (int r = 1; r <= cutoff; ++r) {
                if (beta_iso(t, p, q, r))
                    continue;
                auto w = obstruction_nonempty(t, p - r, q + r - 1, r);
                if (!w)
                    return fail("beta fails at " + cell_str(p, q) + " r=" +
                                std::to_string(r) + " but the obstruction set is empty");
                if (!check_witness(ft, *w))
                    return fail("extracted witness for beta at " + cell_str(p, q) +
                                " r=" + std::to_string(r) + " fails reverification");
            }
        }
        for (const auto& [key, nonempty] : obstruction_table(t)) {
            auto [p, q, r] = key;
            if (!nonempty || r == 0)
                continue;
            if (beta_iso(t, p + r, q - r + 1, 1) && beta_iso(t, p + r, q - r + 1, r))
                return fail("obstruction at " + cell_str(p, q) + " r=" + std::to_string(r) +
                            " but beta is an isomorphism at both j=1 and j=r");
        }
        return {};
    }
    }
    throw std::invalid_argument("evaluate_property: unknown property");
}

} // namespace detail

/// Evaluates one property on one complex. Exceptions (including injected
/// faults tripping internal checks) count as failures, never as crashes.
template <typename F>
Evaluation evaluate_property(const F& field, const DoubleComplex<F>& c, Property prop) {
    static_cast<void>(field);
    try {
        return detail::evaluate_impl(c, prop);
    } catch (const std::exception& e) {
        return {Outcome::fail, std::string("exception: ") + e.what()};
    }
}

/// Drops direct summands greedily, then the basis change, keeping the
/// property failing; the result is minimal under this order.
template <typename F>
Blueprint shrink_blueprint(const F& field, Blueprint bp, Property prop) {
    auto fails = [&](const Blueprint& b) {
        return evaluate_property(field, build_blueprint(field, b), prop).outcome ==
               Outcome::fail;
    };
    if (!fails(bp))
        throw std::invalid_argument("shrink: property does not fail on the input complex");
    bool progress = true;
    while (progress && bp.atoms.size() > 1) {
        progress = false;
        for (std::size_t i = 0; i < bp.atoms.size(); ++i) {
            Blueprint cand = bp;
            cand.atoms.erase(cand.atoms.begin() + static_cast<std::ptrdiff_t>(i));
            if (fails(cand)) {
                bp = std::move(cand);
                progress = true;
                break;
            }
        }
    }
    if (bp.with_iso) {
        Blueprint cand = bp;
        cand.with_iso = false;
        if (fails(cand))
            bp = std::move(cand);
    }
    return bp;
}

template <typename F>
DoubleComplex<F> shrink(const F& field, const Blueprint& bp, Property prop) {
    return build_blueprint(field, shrink_blueprint(field, bp, prop));
}

struct Campaign {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    Recipe recipe = Recipe::mixed();
    std::vector<Property> properties;
};

struct PropertyTally {
    std::size_t pass = 0, fail = 0, vacuous = 0;
};

struct FailureBundle {
    Property property;
    std::size_t trial = 0;
    std::uint64_t complex_seed = 0;
    std::string detail;
    std::string minimized;
};

struct CampaignReport {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::string recipe_name;
    std::string field_name;
    std::vector<std::pair<Property, PropertyTally>> tallies;
    std::optional<FailureBundle> first_failure;
    double wall_seconds = 0;

    std::size_t total_failures() const {
        std::size_t n = 0;
        for (const auto& [p, t] : tallies)
            n += t.fail;
        return n;
    }

    /// Canonical text form. Wall time is deliberately omitted so equal
    /// (seed, recipe, properties) runs render byte-identically.
    std::string render() const {
        std::ostringstream out;
        out << "specseq campaign report\n";
        out << "seed: " << seed << "\n";
        out << "trials: " << trials << "\n";
        out << "recipe: " << recipe_name << "\n";
        out << "field: " << field_name << "\n";
        out << "property pass fail vacuous\n";
        for (const auto& [p, t] : tallies)
            out << property_name(p) << " " << t.pass << " " << t.fail << " " << t.vacuous
                << "\n";
        if (!first_failure) {
            out << "first-failure: none\n";
        } else {
            const auto& f = *first_failure;
            out << "first-failure:\n";
            out << "  property: " << property_name(f.property) << "\n";
            out << "  trial: " << f.trial << "\n";
            out << "  complex-seed: " << f.complex_seed << "\n";
            out << "  detail: " << f.detail << "\n";
            out << "  minimized complex:\n" << f.minimized;
        }
        return out.str();
    }
};

/// Runs every listed property on every generated complex. The failure
/// budget is zero: these are theorems, so a single failure marks the
/// whole campaign and ships a minimized counterexample bundle.
template <typename F>
CampaignReport run_campaign(const F& field, const Campaign& c) {
    const auto t0 = std::chrono::steady_clock::now();
    CampaignReport rep;
    rep.seed = c.seed;
    rep.trials = c.trials;
    rep.recipe_name = c.recipe.name;
    rep.field_name = field.name();
    for (Property p : c.properties)
        rep.tallies.emplace_back(p, PropertyTally{});

    std::mt19937_64 rng(c.seed);
    for (std::size_t trial = 0; trial < c.trials; ++trial) {
        const std::uint64_t complex_seed = rng();
        auto [cx, bp] = random_complex_blueprint(field, c.recipe, complex_seed);
        for (auto& [prop, tally] : rep.tallies) {
            const auto ev = evaluate_property(field, cx, prop);
            switch (ev.outcome) {
            case Outcome::pass:
                ++tally.pass;
                break;
            case Outcome::vacuous:
                ++tally.vacuous;
                break;
            case Outcome::fail:
                ++tally.fail;
                if (!rep.first_failure) {
                    auto minimized = shrink_blueprint(field, bp, prop);
                    rep.first_failure =
                        FailureBundle{prop, trial, complex_seed, ev.detail,
                                      serialize_complex(build_blueprint(field, minimized))};
                }
                break;
            }
        }
    }
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace specseq

#endif
