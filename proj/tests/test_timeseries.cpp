#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "morse_persist/timeseries.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace morse_persist;

namespace {

Grid unit_grid(int depth) { return Grid(fixtures::unit_interval(), depth); }

Point pt(const Rational& x) { return Point{x}; }

SampleSet make_samples(std::initializer_list<std::pair<Rational, Rational>> pairs) {
    SampleSet s;
    s.dim = 1;
    for (const auto& [x, y] : pairs) s.pairs.emplace_back(pt(x), pt(y));
    return s;
}

Rational dec(const char* text) { return parse_rational(text); }

}  // namespace

TEST_CASE("delay embedding") {
    std::vector<Rational> series{Rational(1), Rational(2), Rational(3), Rational(4)};
    ObservationSet e = delay_embed(series, 2);
    REQUIRE(e.dim == 2);
    REQUIRE(e.series.size() == 1);
    REQUIRE(e.series[0] ==
            std::vector<Point>{{Rational(1), Rational(2)},
                               {Rational(2), Rational(3)},
                               {Rational(3), Rational(4)}});

    ObservationSet id = delay_embed(series, 1);
    REQUIRE(id.series[0].size() == 4);

    REQUIRE_THROWS_AS(delay_embed({Rational(1)}, 2), DataError);
    REQUIRE_THROWS_AS(delay_embed(series, 0), ConfigError);
}

TEST_CASE("observation map") {
    SECTION("a bouncing series gives a 2-cycle") {
        ObservationSet obs;
        obs.dim = 1;
        obs.series = {{pt(dec("0.1")), pt(dec("0.6")), pt(dec("0.2"))}};
        GridMap m = observation_map(obs, unit_grid(1));
        REQUIRE(m.vertex_count() == 2);
        REQUIRE(m.has_edge(0, 1));
        REQUIRE(m.has_edge(1, 0));
    }
    SECTION("a single point trims to the empty map") {
        ObservationSet obs;
        obs.dim = 1;
        obs.series = {{pt(dec("0.4"))}};
        REQUIRE(observation_map(obs, unit_grid(1)).vertex_count() == 0);
    }
    SECTION("a constant series is a self-loop") {
        ObservationSet obs;
        obs.dim = 1;
        obs.series = {{pt(dec("0.3")), pt(dec("0.3")), pt(dec("0.3"))}};
        GridMap m = observation_map(obs, unit_grid(2));
        REQUIRE(m.vertex_count() == 1);
        REQUIRE(m.has_edge(1, 1));
    }
    SECTION("points outside the box are reported") {
        ObservationSet obs;
        obs.dim = 1;
        obs.series = {{pt(dec("1.5")), pt(dec("0.5"))}};
        REQUIRE_THROWS_WITH(observation_map(obs, unit_grid(1)),
                            Catch::Matchers::ContainsSubstring("3/2"));
    }
}

TEST_CASE("sampled map") {
    SECTION("two crossing pairs give a 2-cycle") {
        GridMap m = sampled_map(make_samples({{dec("0.1"), dec("0.8")},
                                              {dec("0.8"), dec("0.1")}}),
                                unit_grid(1));
        REQUIRE(m.has_edge(0, 1));
        REQUIRE(m.has_edge(1, 0));
    }
    SECTION("empty sample gives the empty map") {
        SampleSet empty;
        empty.dim = 1;
        REQUIRE(sampled_map(empty, unit_grid(2)).vertex_count() == 0);
    }
    SECTION("exact samples of x^2 are contained in the minimal map") {
        oracle::Rng rng(103);
        MapSpec f = MapSpec::parse("x^2");
        for (int depth : {1, 2, 3}) {
            Grid g = unit_grid(depth);
            GridMap mm = minimal_map(f, g);
            SampleSet data;
            data.dim = 1;
            for (int i = 0; i < 200; ++i) {
                Rational x(static_cast<int>(rng.below(257)), 256);
                data.pairs.emplace_back(pt(x), pt(x * x));
            }
            GridMap fd = sampled_map(data, g);
            for (auto [a, b] : fd.edge_list()) REQUIRE(mm.has_edge(a, b));
        }
    }
}

TEST_CASE("transition counts") {
    Grid g = unit_grid(1);
    SampleSet data = make_samples(
        {{dec("0.1"), dec("0.8")}, {dec("0.2"), dec("0.9")}, {dec("0.8"), dec("0.1")}});
    TransitionCounts tc = TransitionCounts::from_samples(data, g);
    REQUIRE(tc.count(0, 1) == 2);
    REQUIRE(tc.count(1, 0) == 1);
    REQUIRE(tc.n_max == 2);
    REQUIRE(tc.visits(0) == 2);
    REQUIRE(tc.visits(1) == 1);

    long long total = 0;
    for (const auto& [key, cnt] : tc.n) total += cnt;
    REQUIRE(total == static_cast<long long>(data.pairs.size()));

    SECTION("terminal observations count as visits") {
        ObservationSet obs;
        obs.dim = 1;
        obs.series = {{pt(dec("0.1")), pt(dec("0.6")), pt(dec("0.2"))}};
        TransitionCounts oc = TransitionCounts::from_observations(obs, g);
        REQUIRE(oc.visits(0) == 2);
        REQUIRE(oc.visits(1) == 1);
        long long transitions = 0;
        for (const auto& [key, cnt] : oc.n) transitions += cnt;
        REQUIRE(transitions == static_cast<long long>(obs.transition_count()));
    }
    SECTION("counts never drop under coarsening") {
        oracle::Rng rng(107);
        for (int trial = 0; trial < 100; ++trial) {
            SampleSet random;
            random.dim = 1;
            for (int i = 0; i < 30; ++i)
                random.pairs.emplace_back(pt(Rational(static_cast<int>(rng.below(65)), 64)),
                                          pt(Rational(static_cast<int>(rng.below(65)), 64)));
            Grid fine = unit_grid(3), coarse = unit_grid(1);
            RefinementCellMap h(fine, coarse);
            TransitionCounts tf = TransitionCounts::from_samples(random, fine);
            TransitionCounts tcoarse = TransitionCounts::from_samples(random, coarse);
            for (const auto& [key, cnt] : tf.n)
                REQUIRE(tcoarse.count(h.apply(key.first), h.apply(key.second)) >= cnt);
        }
    }
}

TEST_CASE("thresholded map") {
    Grid g = unit_grid(1);
    // counts: 0->1 three times, 1->0 once
    SampleSet data = make_samples({{dec("0.1"), dec("0.8")},
                                   {dec("0.2"), dec("0.9")},
                                   {dec("0.3"), dec("0.7")},
                                   {dec("0.8"), dec("0.1")}});

    SECTION("mu = 0 keeps every observed edge") {
        REQUIRE(thresholded_map(data, g, Rational(0)) == sampled_map(data, g));
    }
    SECTION("mu = 1/2 keeps only the heavy edge, which then trims away") {
        GridMap m = thresholded_map(data, g, Rational(1, 2));
        REQUIRE(m.vertex_count() == 0);  // a lone 0->1 edge is stranded
        // the surviving pre-trim edge is visible through the counts
        TransitionCounts tc = TransitionCounts::from_samples(data, g);
        REQUIRE(Rational(tc.count(0, 1)) > Rational(1, 2) * Rational(tc.n_max));
        REQUIRE_FALSE(Rational(tc.count(1, 0)) > Rational(1, 2) * Rational(tc.n_max));
    }
    SECTION("mu close to 1 keeps only maximal-count loops") {
        SampleSet loops = make_samples({{dec("0.1"), dec("0.2")},
                                        {dec("0.2"), dec("0.1")},
                                        {dec("0.8"), dec("0.9")}});
        GridMap m = thresholded_map(loops, g, Rational(2, 3));
        REQUIRE(m.vertex_count() == 1);
        REQUIRE(m.has_edge(0, 0));
    }
    SECTION("mu outside [0,1) is rejected") {
        REQUIRE_THROWS_AS(thresholded_map(data, g, Rational(1)), ConfigError);
        REQUIRE_THROWS_AS(thresholded_map(data, g, Rational(-1, 2)), ConfigError);
    }
}

TEST_CASE("persistent threshold schedule") {
    Grid d2 = unit_grid(2), d1 = unit_grid(1);
    REQUIRE(persistent_threshold(dec("0.4"), d2, d1) == Rational(1, 10));
    REQUIRE(persistent_threshold(dec("0.4"), d2, d2) == dec("0.4"));

    Box sq({Rational(0), Rational(0)}, {Rational(1), Rational(1)});
    REQUIRE(persistent_threshold(Rational(1, 2), Grid(sq, 3), Grid(sq, 2)) ==
            Rational(1, 32));  // M = 4, mu / 16

    REQUIRE_THROWS_AS(persistent_threshold(dec("0.4"), d1, d2), ConfigError);
}

TEST_CASE("morita map") {
    Grid g = unit_grid(1);
    // counts ab:2, ba:1 with v(a)=2, v(b)=1
    SampleSet data = make_samples(
        {{dec("0.1"), dec("0.8")}, {dec("0.2"), dec("0.9")}, {dec("0.8"), dec("0.1")}});

    SECTION("lambda = 0, mu = 1 reduces to the sampled map") {
        REQUIRE(morita_map(data, g, Rational(0), 1) == sampled_map(data, g));
        oracle::Rng rng(109);
        for (int trial = 0; trial < 50; ++trial) {
            SampleSet random;
            random.dim = 1;
            for (int i = 0; i < 20; ++i)
                random.pairs.emplace_back(pt(Rational(static_cast<int>(rng.below(33)), 32)),
                                          pt(Rational(static_cast<int>(rng.below(33)), 32)));
            Grid g3 = unit_grid(3);
            REQUIRE(morita_map(random, g3, Rational(0), 1) == sampled_map(random, g3));
        }
    }
    SECTION("lambda = 1 keeps the balanced 2-cycle") {
        GridMap m = morita_map(data, g, Rational(1), 1);
        REQUIRE(m.has_edge(0, 1));  // t(a,b) = 1 >= 1 * t(b,a) = 1
        REQUIRE(m.has_edge(1, 0));
    }
    SECTION("lambda = 2 drops both directions") {
        GridMap m = morita_map(data, g, Rational(2), 1);
        REQUIRE(m.vertex_count() == 0);
    }
    SECTION("parameter validation") {
        REQUIRE_THROWS_AS(morita_map(data, g, Rational(-1), 1), ConfigError);
        REQUIRE_THROWS_AS(morita_map(data, g, Rational(1), 0), ConfigError);
    }
}

TEST_CASE("refinement persistence for data maps") {
    oracle::Rng rng(113);
    for (int trial = 0; trial < 200; ++trial) {
        SampleSet data;
        data.dim = 1;
        for (int i = 0; i < 25; ++i)
            data.pairs.emplace_back(pt(Rational(static_cast<int>(rng.below(65)), 64)),
                                    pt(Rational(static_cast<int>(rng.below(65)), 64)));
        ObservationSet obs;
        obs.dim = 1;
        obs.series.emplace_back();
        for (int i = 0; i < 25; ++i)
            obs.series[0].push_back(pt(Rational(static_cast<int>(rng.below(65)), 64)));

        int kf = 1 + static_cast<int>(rng.below(4));
        int kc = static_cast<int>(rng.below(kf + 1));
        Grid fine = unit_grid(kf), coarse = unit_grid(kc);
        RefinementCellMap h(fine, coarse);
        REQUIRE(is_morphism(h, sampled_map(data, fine), sampled_map(data, coarse)));
        REQUIRE(is_morphism(h, observation_map(obs, fine), observation_map(obs, coarse)));
    }
}

TEST_CASE("threshold persistence check") {
    SECTION("the schedule passes on random data") {
        oracle::Rng rng(127);
        for (int trial = 0; trial < 100; ++trial) {
            SampleSet data;
            data.dim = 1;
            for (int i = 0; i < 40; ++i)
                data.pairs.emplace_back(pt(Rational(static_cast<int>(rng.below(65)), 64)),
                                        pt(Rational(static_cast<int>(rng.below(65)), 64)));
            Grid fine = unit_grid(3), coarse = unit_grid(1);
            Rational mu(1 + static_cast<int>(rng.below(6)), 10);
            Rational mu_coarse = persistent_threshold(mu, fine, coarse);
            auto report = threshold_persistence_check(data, fine, coarse, mu, mu_coarse);
            REQUIRE(report.schedule_ok);
            REQUIRE(report.holds);
        }
    }
    SECTION("a fixed threshold fails on the dense-block data") {
        // one dense coarse block inflates n_max(coarse) by M^2
        SampleSet data = make_samples({{dec("0.1"), dec("0.1")},
                                       {dec("0.55"), dec("0.55")},
                                       {dec("0.55"), dec("0.8")},
                                       {dec("0.8"), dec("0.55")},
                                       {dec("0.8"), dec("0.8")}});
        Grid fine = unit_grid(2), coarse = unit_grid(1);
        auto report = threshold_persistence_check(data, fine, coarse, Rational(1, 2),
                                                  Rational(1, 2));
        REQUIRE_FALSE(report.schedule_ok);
        REQUIRE_FALSE(report.holds);
        REQUIRE(report.counterexample.has_value());
        // the same data under the schedule does persist
        auto ok = threshold_persistence_check(
            data, fine, coarse, Rational(1, 2),
            persistent_threshold(Rational(1, 2), fine, coarse));
        REQUIRE(ok.holds);
    }
    SECTION("mu = 0 at both levels reduces to plain persistence") {
        SampleSet data = make_samples({{dec("0.1"), dec("0.8")}, {dec("0.8"), dec("0.1")}});
        auto report = threshold_persistence_check(data, unit_grid(2), unit_grid(1),
                                                  Rational(0), Rational(0));
        REQUIRE(report.holds);
    }
}

TEST_CASE("CSV parsing") {
    SECTION("observation runs split on blank lines") {
        std::stringstream in("0.1,0.2\n0.3,0.4\n\n0.5,0.6\n");
        ObservationSet obs = csv::read_observations(in, "test");
        REQUIRE(obs.dim == 2);
        REQUIRE(obs.series.size() == 2);
        REQUIRE(obs.series[0].size() == 2);
        REQUIRE(obs.series[0][0] == Point{dec("0.1"), dec("0.2")});
    }
    SECTION("samples split rows into x and y") {
        std::stringstream in("0.1,0.8\n0.8,0.1\n");
        SampleSet data = csv::read_samples(in, "test");
        REQUIRE(data.dim == 1);
        REQUIRE(data.pairs.size() == 2);
        REQUIRE(data.pairs[0].first == pt(dec("0.1")));
        REQUIRE(data.pairs[0].second == pt(dec("0.8")));
    }
    SECTION("bad rows are diagnosed") {
        std::stringstream bad("0.1,abc\n");
        REQUIRE_THROWS_AS(csv::read_samples(bad, "test"), DataError);
        std::stringstream ragged("0.1,0.2\n0.3\n");
        REQUIRE_THROWS_AS(csv::read_observations(ragged, "test"), DataError);
        std::stringstream odd("0.1,0.2,0.3\n");
        REQUIRE_THROWS_AS(csv::read_samples(odd, "test"), DataError);
        std::stringstream empty("\n\n");
        REQUIRE_THROWS_AS(csv::read_observations(empty, "test"), DataError);
    }
}
