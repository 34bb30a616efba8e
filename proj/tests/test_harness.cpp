#include <catch2/catch_amalgamated.hpp>

#include "specseq/harness.hpp"

using namespace specseq;

namespace {

Campaign make_campaign(std::uint64_t seed, std::size_t trials, Recipe recipe,
                       std::vector<Property> props) {
    Campaign c;
    c.seed = seed;
    c.trials = trials;
    c.recipe = std::move(recipe);
    c.properties = std::move(props);
    return c;
}

void check_tally_sums(const CampaignReport& rep) {
    for (const auto& [p, t] : rep.tallies)
        CHECK(t.pass + t.fail + t.vacuous == rep.trials);
}

} // namespace

TEST_CASE("property names round trip") {
    for (Property p : all_properties()) {
        auto back = property_from_name(property_name(p));
        REQUIRE(back.has_value());
        CHECK(*back == p);
    }
    CHECK(!property_from_name("page").has_value());
    CHECK(!property_from_name("").has_value());
}

TEST_CASE("zero-trial campaign renders an empty report") {
    Rationals q;
    auto rep = run_campaign(q, make_campaign(1, 0, Recipe::mixed(), all_properties()));
    CHECK(rep.total_failures() == 0);
    CHECK(!rep.first_failure.has_value());
    check_tally_sums(rep);
    const auto text = rep.render();
    CHECK(text.find("trials: 0") != std::string::npos);
    CHECK(text.find("first-failure: none") != std::string::npos);
}

TEST_CASE("clean campaigns pass every property") {
    Rationals q;
    PrimeField f2(2);

    auto r1 = run_campaign(
        q, make_campaign(11, 25, Recipe::squares_dots(),
                         {Property::main_theorem, Property::convergence}));
    CHECK(r1.total_failures() == 0);
    CHECK(!r1.first_failure.has_value());
    check_tally_sums(r1);

    auto r2 = run_campaign(f2, make_campaign(12, 15, Recipe::mixed(), all_properties()));
    CHECK(r2.total_failures() == 0);
    check_tally_sums(r2);

    auto r3 = run_campaign(
        q, make_campaign(13, 10, Recipe::zigzags(),
                         {Property::page_oracle, Property::eqdeg_agreement,
                          Property::lemma_alpha, Property::lemma_beta}));
    CHECK(r3.total_failures() == 0);
    check_tally_sums(r3);
}

TEST_CASE("main theorem vacuity is tracked, not silently passed") {
    Rationals q;
    auto rep =
        run_campaign(q, make_campaign(21, 20, Recipe::zigzags(), {Property::main_theorem}));
    CHECK(rep.total_failures() == 0);
    REQUIRE(rep.tallies.size() == 1);
    CHECK(rep.tallies[0].second.vacuous > 0);
    check_tally_sums(rep);
}

TEST_CASE("reports are byte identical across reruns") {
    PrimeField f3(3);
    auto c = make_campaign(31, 10, Recipe::mixed(),
                           {Property::eqdeg_agreement, Property::main_theorem});
    auto a = run_campaign(f3, c);
    auto b = run_campaign(f3, c);
    CHECK(a.render() == b.render());
}

TEST_CASE("every injected fault is detected by the campaign properties") {
    Rationals q;
    auto sq = make_square(q, 0, 0);
    auto hz = make_zigzag(q, ZigzagShape::HZ, 0, 0);
    const std::vector<Property> sweep = {Property::page_oracle, Property::eqdeg_agreement};

    auto sweep_failures = [&]() {
        std::size_t fails = 0;
        for (const auto* c : {&sq, &hz})
            for (Property p : sweep)
                if (evaluate_property(q, *c, p).outcome == Outcome::fail)
                    ++fails;
        return fails;
    };

    CHECK(sweep_failures() == 0);
    for (auto kind : {faults::Kind::z_shift, faults::Kind::b_shift,
                      faults::Kind::totalize_sign, faults::Kind::quotient_skip,
                      faults::Kind::degeneration_early}) {
        faults::Scoped guard(kind);
        CHECK(sweep_failures() >= 1);
    }
    CHECK(sweep_failures() == 0);
}

TEST_CASE("campaign under an injected fault ships a minimized counterexample") {
    Rationals q;
    faults::Scoped guard(faults::Kind::b_shift);
    auto rep = run_campaign(q, make_campaign(41, 10, Recipe::squares_dots(),
                                             {Property::eqdeg_agreement}));
    CHECK(rep.total_failures() > 0);
    REQUIRE(rep.first_failure.has_value());
    const auto& f = *rep.first_failure;
    CHECK(f.property == Property::eqdeg_agreement);
    CHECK(!f.detail.empty());

    auto minimized = parse_complex(q, f.minimized);
    CHECK(minimized.support().size() <= 4);
    CHECK(evaluate_property(q, minimized, Property::eqdeg_agreement).outcome ==
          Outcome::fail);

    const auto text = rep.render();
    CHECK(text.find("first-failure:") != std::string::npos);
    CHECK(text.find("complex-seed: " + std::to_string(f.complex_seed)) != std::string::npos);
}

TEST_CASE("shrinking drops spectator summands and the basis change") {
    Rationals q;
    faults::Scoped guard(faults::Kind::b_shift);
    Blueprint bp;
    bp.atoms = {Atom{Atom::Kind::square, 0, 0, 0, false},
                Atom{Atom::Kind::dot, 3, 0, 0, false},
                Atom{Atom::Kind::dot, 0, 3, 0, false}};
    bp.with_iso = true;
    bp.iso_seed = 7;

    auto shrunk = shrink_blueprint(q, bp, Property::eqdeg_agreement);
    REQUIRE(shrunk.atoms.size() == 1);
    CHECK(shrunk.atoms[0].kind == Atom::Kind::square);
    CHECK(!shrunk.with_iso);
    CHECK(evaluate_property(q, build_blueprint(q, shrunk),
                            Property::eqdeg_agreement).outcome == Outcome::fail);
}

TEST_CASE("shrinking refuses complexes where the property holds") {
    Rationals q;
    Blueprint bp;
    bp.atoms = {Atom{Atom::Kind::dot, 0, 0, 0, false}};
    CHECK_THROWS_AS(shrink_blueprint(q, bp, Property::page_oracle), std::invalid_argument);
}
