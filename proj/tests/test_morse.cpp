#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "morse_persist/morse.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace morse_persist;

namespace {
std::set<std::set<CellKey>> as_sets(const MorseDecomposition& md) {
    std::set<std::set<CellKey>> out;
    for (const CellSet& s : md.sets) out.insert({s.cells.begin(), s.cells.end()});
    return out;
}
}  // namespace

TEST_CASE("recurrent cells") {
    Grid g(fixtures::unit_interval(), 2);
    REQUIRE(recurrent_cells(GridMap(g, {0, 1}, {{0, 1}, {1, 0}})).cells ==
            std::vector<CellKey>{0, 1});
    REQUIRE(recurrent_cells(GridMap(g, {0, 1}, {{0, 1}})).cells.empty());

    auto fig = fixtures::fig_chain();
    auto rc = recurrent_cells(fig.maps[0]);
    const auto& names = fig.cells[0];
    REQUIRE(rc.cells == std::vector<CellKey>({names.at("G2"), names.at("G6"), names.at("G7")}));
}

TEST_CASE("finest decomposition on the worked chain") {
    auto fig = fixtures::fig_chain();

    SECTION("level A: three singleton Morse sets, one strict relation") {
        MorseDecomposition md = finest_decomposition(fig.maps[0]);
        const auto& names = fig.cells[0];
        REQUIRE(as_sets(md) == std::set<std::set<CellKey>>{
                                   {names.at("G2")}, {names.at("G6")}, {names.at("G7")}});
        // canonical order: G2 < G6 < G7 by cell key; only {G7} > {G6}
        REQUIRE(md.order == std::vector<std::pair<int, int>>{{2, 1}});
    }
    SECTION("level C: the merged middle block becomes a Morse set") {
        MorseDecomposition md = finest_decomposition(fig.maps[2]);
        const auto& names = fig.cells[2];
        REQUIRE(as_sets(md) ==
                std::set<std::set<CellKey>>{{names.at("G12")},
                                            {names.at("G345")},
                                            {names.at("G6")},
                                            {names.at("G7")}});
    }
    SECTION("single self-loop graph") {
        Grid g(fixtures::unit_interval(), 1);
        MorseDecomposition md = finest_decomposition(GridMap(g, {0}, {{0, 0}}));
        REQUIRE(md.set_count() == 1);
        REQUIRE(md.order.empty());
    }
}

TEST_CASE("Morse sets equal the reachability-matrix SCC oracle") {
    oracle::Rng rng(53);
    for (int trial = 0; trial < 400; ++trial) {
        int n = 2 + static_cast<int>(rng.below(7));  // up to 8 vertices
        auto dg = oracle::random_digraph(rng, n, 1, 4);
        GridMap m = fixtures::graph_as_gridmap(dg);
        MorseDecomposition md = finest_decomposition(m);

        std::set<std::set<CellKey>> expected;
        for (const auto& comp : oracle::nontrivial_sccs(dg))
            expected.insert({comp.begin(), comp.end()});
        REQUIRE(as_sets(md) == expected);

        // order soundness against the closure oracle, and antisymmetry
        auto reach = oracle::closure(dg);
        for (int j = 0; j < md.set_count(); ++j)
            for (int k = 0; k < md.set_count(); ++k) {
                if (j == k) continue;
                int a = static_cast<int>(md.sets[j].cells.front());
                int b = static_cast<int>(md.sets[k].cells.front());
                REQUIRE(md.strictly_above(j, k) == static_cast<bool>(reach[a][b]));
                if (md.strictly_above(j, k)) REQUIRE_FALSE(md.strictly_above(k, j));
            }
    }
}

TEST_CASE("restrictions are strongly connected induced subgraphs") {
    auto fig = fixtures::fig_chain();
    AugmentedMorseDecomposition aug = restrictions(finest_decomposition(fig.maps[0]));
    REQUIRE(aug.restriction_maps.size() == 3);
    for (const GridMap& r : aug.restriction_maps) {
        REQUIRE(r.vertex_count() == 1);
        REQUIRE(r.edge_count() == 1);  // each is a single loop here
    }

    Grid g(fixtures::unit_interval(), 1);
    AugmentedMorseDecomposition two =
        restrictions(finest_decomposition(GridMap(g, {0, 1}, {{0, 1}, {1, 0}})));
    REQUIRE(two.restriction_maps.size() == 1);
    REQUIRE(two.restriction_maps[0].edge_count() == 2);

    SECTION("restriction drops edges leaving the set") {
        Grid g2(fixtures::unit_interval(), 2);
        GridMap m(g2, {0, 1, 2}, {{0, 1}, {1, 0}, {0, 2}, {2, 2}});
        auto aug2 = restrictions(finest_decomposition(m));
        // sets {0,1} and {2}; the restriction to {0,1} has no edge to 2
        REQUIRE(aug2.restriction_maps[0].edge_count() == 2);
        REQUIRE(aug2.restriction_maps[1].edge_count() == 1);
    }
}

TEST_CASE("Morse morphisms across the worked chain") {
    auto fig = fixtures::fig_chain();
    std::vector<AugmentedMorseDecomposition> augs;
    for (const auto& m : fig.maps) augs.push_back(restrictions(finest_decomposition(m)));

    RefinementCellMap hAB(fig.grids[0], fig.grids[1]);
    RefinementCellMap hBC(fig.grids[1], fig.grids[2]);
    RefinementCellMap hCD(fig.grids[2], fig.grids[3]);

    MorseMorphism mAB = morse_morphism(hAB, augs[0], augs[1]);
    MorseMorphism mBC = morse_morphism(hBC, augs[1], augs[2]);
    MorseMorphism mCD = morse_morphism(hCD, augs[2], augs[3]);

    SECTION("the first Morse set grows into the merged cell") {
        // A: sets [{G2},{G6},{G7}]; B: sets [{G12},{G6},{G7}]
        REQUIRE(mAB.set_map == std::vector<int>{0, 1, 2});
        const auto& dst = augs[1].decomposition;
        REQUIRE(dst.sets[mAB.set_map[0]].cells ==
                std::vector<CellKey>{fig.cells[1].at("G12")});
    }
    SECTION("the two right-hand sets merge into one") {
        // C sets: [{G345},{G12},{G6},{G7}] -> D sets: [{G345},{G12},{G67}]
        REQUIRE(mCD.set_map == std::vector<int>{0, 1, 2, 2});
    }
    SECTION("identity refinement gives the identity morphism") {
        RefinementCellMap id(fig.grids[0], fig.grids[0]);
        MorseMorphism mid = morse_morphism(id, augs[0], augs[0]);
        REQUIRE(mid.set_map == std::vector<int>{0, 1, 2});
    }
    SECTION("composition law along the chain") {
        MorseMorphism mAC = morse_morphism(compose(hAB, hBC), augs[0], augs[2]);
        MorseMorphism composed = compose(mAB, mBC);
        REQUIRE(composed.set_map == mAC.set_map);
        MorseMorphism mAD = morse_morphism(compose(compose(hAB, hBC), hCD), augs[0], augs[3]);
        REQUIRE(compose(compose(mAB, mBC), mCD).set_map == mAD.set_map);
    }
    SECTION("not-a-morphism precondition is reported") {
        // against the wrong target level
        REQUIRE_THROWS_AS(morse_morphism(hAB, augs[0], augs[2]), ConfigError);
        // right grids, but a target map missing a needed edge
        auto edges = fig.maps[1].edge_list();
        std::vector<std::pair<CellKey, CellKey>> pruned;
        CellKey g12 = fig.cells[1].at("G12");
        for (auto e : edges)
            if (e != std::make_pair(g12, g12)) pruned.push_back(e);
        GridMap broken(fig.grids[1], {fig.maps[1].vertices().begin(),
                                      fig.maps[1].vertices().end()}, pruned);
        auto broken_aug = restrictions(finest_decomposition(broken));
        REQUIRE_THROWS_AS(morse_morphism(hAB, augs[0], broken_aug), DataError);
    }
    SECTION("images of Morse sets are invariant in the coarse map") {
        for (int j = 0; j < augs[0].decomposition.set_count(); ++j) {
            CellSet img = hAB.apply(augs[0].decomposition.sets[j]);
            REQUIRE(is_invariant(img, fig.maps[1]));
        }
    }
}
