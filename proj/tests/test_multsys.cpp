#include <catch2/catch_amalgamated.hpp>

#include "locfrac/corpus.hpp"
#include "locfrac/multsys.hpp"

using namespace locfrac;

namespace {

// Independent oracle: roof classes by zig-zag closure over raw pairs. Right
// side: pairs (t: y -> y' in S, g: x -> y'), related when an arrow carries
// one pair onto the other; classes are the symmetric-transitive closure.
std::size_t roof_classes_right(const CatPtr& c, const std::set<Id>& s, const Id& x, const Id& y) {
    struct Roof {
        Id t, g;
    };
    std::vector<Roof> roofs;
    for (const Morphism& t : c->morphisms) {
        if (t.src != y || !s.count(t.id))
            continue;
        for (const Id& g : c->hom(x, t.tgt))
            roofs.push_back({t.id, g});
    }
    UnionFind uf(roofs.size());
    for (std::size_t i = 0; i < roofs.size(); ++i)
        for (std::size_t j = 0; j < roofs.size(); ++j) {
            // u carries roof i onto roof j when u∘t_i = t_j and u∘g_i = g_j
            for (const Id& u : c->hom(c->tgt(roofs[i].t), c->tgt(roofs[j].t)))
                if (c->comp(u, roofs[i].t) == roofs[j].t && c->comp(u, roofs[i].g) == roofs[j].g)
                    uf.unite(i, j);
        }
    std::set<std::size_t> reps;
    for (std::size_t i = 0; i < roofs.size(); ++i)
        reps.insert(uf.find(i));
    return reps.size();
}

}  // namespace

TEST_CASE("chain3 with S = {ids, u} is a quasi-saturated system on both sides") {
    CatPtr c = corpus::chain3();
    MorphismClass s = corpus::with_members(c, {"u"});
    SystemReport r = validate_mult_system(s);
    CHECK(r.s1);
    CHECK(r.s2);
    CHECK(r.right_s3);
    CHECK(r.left_s3);
    CHECK(r.right_s4);
    CHECK(r.left_s4);
    CHECK(r.right_quasi_saturated);
    CHECK(r.left_quasi_saturated);
    CHECK(r.supports(Formula::Bilateral));
}

TEST_CASE("the identity class is bilateral and quasi-saturated on any fixture") {
    for (const CatPtr& c : {corpus::chain3(), corpus::walking_arrow(), corpus::pair_cat()}) {
        SystemReport r = validate_mult_system(corpus::identity_class(c));
        CHECK(r.supports(Formula::Bilateral));
    }
}

TEST_CASE("pair_cat with one of a parallel pair fails S3 with a witness") {
    CatPtr c = corpus::pair_cat();
    MorphismClass s = corpus::with_members(c, {"f"});
    SystemReport r = validate_mult_system(s);
    CHECK_FALSE(r.right_s3);
    CHECK_FALSE(r.left_s3);
    bool witnessed = false;
    for (const Violation& v : r.witnesses)
        if ((v.law == "right-S3" || v.law == "left-S3") && !v.witnesses.empty())
            witnessed = true;
    CHECK(witnessed);
}

TEST_CASE("localized hom sets") {
    SECTION("walking_arrow Hom_{C_S}(b, a) is a singleton") {
        CatPtr c = corpus::walking_arrow();
        MorphismClass s = corpus::with_members(c, {"u"});
        LocalizedHom h = localized_hom(s, "b", "a", Formula::Right);
        CHECK(h.fractions.size() == 1);
    }
    SECTION("chain3 Hom_{C_S}(2, 0) is empty") {
        CatPtr c = corpus::chain3();
        MorphismClass s = corpus::with_members(c, {"u"});
        CHECK(localized_hom(s, "2", "0", Formula::Right).fractions.empty());
    }
    SECTION("S = identities reproduces the plain Hom sets") {
        CatPtr c = corpus::chain3();
        MorphismClass s = corpus::identity_class(c);
        for (const Id& x : c->objects)
            for (const Id& y : c->objects)
                CHECK(localized_hom(s, x, y, Formula::Right).fractions.size() ==
                      c->hom(x, y).size());
    }
    SECTION("a right-only request on the left formula is rejected") {
        // On pair_cat {ids} is fine but {ids,f} supports neither side.
        CatPtr c = corpus::pair_cat();
        MorphismClass s = corpus::with_members(c, {"f"});
        CHECK_THROWS_AS(localized_hom(s, "a", "b", Formula::Left), Error);
    }
}

TEST_CASE("localized hom agrees with the brute-force roof oracle") {
    struct Case {
        CatPtr c;
        MorphismClass s;
    };
    std::vector<Case> cases;
    {
        CatPtr c = corpus::chain3();
        cases.push_back({c, corpus::identity_class(c)});
        cases.push_back({c, corpus::with_members(c, {"u"})});
        cases.push_back({c, corpus::with_members(c, {"a01"})});
        cases.push_back({c, corpus::with_members(c, {"a01", "a02", "u"})});
    }
    {
        CatPtr c = corpus::walking_arrow();
        cases.push_back({c, corpus::identity_class(c)});
        cases.push_back({c, corpus::with_members(c, {"u"})});
    }
    for (const Case& k : cases) {
        SystemReport rep = validate_mult_system(k.s);
        REQUIRE(rep.supports(Formula::Right));
        for (const Id& x : k.c->objects)
            for (const Id& y : k.c->objects) {
                INFO("pair (" << x << ", " << y << ")");
                CHECK(localized_hom(k.s, x, y, Formula::Right).fractions.size() ==
                      roof_classes_right(k.c, k.s.members, x, y));
            }
    }
}

TEST_CASE("materialized localizations") {
    SECTION("walking_arrow becomes the walking isomorphism") {
        CatPtr c = corpus::walking_arrow();
        LocalizedCategory l = materialize_localization(corpus::with_members(c, {"u"}));
        for (const Id& x : c->objects)
            for (const Id& y : c->objects)
                CHECK(l.cat->hom(x, y).size() == 1);
        CHECK(l.cat->is_iso(l.q.on_mor("u")));
    }
    SECTION("chain3: 1 and 2 become isomorphic, Hom(2,0) stays empty") {
        CatPtr c = corpus::chain3();
        LocalizedCategory l = materialize_localization(corpus::with_members(c, {"u"}));
        CHECK(l.cat->hom("1", "2").size() == 1);
        CHECK(l.cat->hom("2", "1").size() == 1);
        CHECK(l.cat->is_iso(l.cat->hom("1", "2").front()));
        CHECK(l.cat->hom("2", "0").empty());
    }
    SECTION("S = identities gives a category isomorphic to the input") {
        CatPtr c = corpus::chain3();
        LocalizedCategory l = materialize_localization(corpus::identity_class(c));
        for (const Id& x : c->objects)
            for (const Id& y : c->objects)
                CHECK(l.cat->hom(x, y).size() == c->hom(x, y).size());
        // Q is bijective on morphisms here
        std::set<Id> image;
        for (const Morphism& m : c->morphisms)
            image.insert(l.q.on_mor(m.id));
        CHECK(image.size() == c->morphisms.size());
    }
    SECTION("localization at all isomorphisms preserves Hom cardinalities") {
        CatPtr c = corpus::chain3();
        std::set<Id> isos;
        for (const Morphism& m : c->morphisms)
            if (c->is_iso(m.id))
                isos.insert(m.id);
        LocalizedCategory l =
            materialize_localization(MorphismClass{c, isos, SystemSide::Bilateral});
        for (const Id& x : c->objects)
            for (const Id& y : c->objects)
                CHECK(l.cat->hom(x, y).size() == c->hom(x, y).size());
    }
    SECTION("tie-break variant changes no canonical output") {
        CatPtr c = corpus::chain3();
        MorphismClass s = corpus::with_members(c, {"u"});
        LocalizedCategory a = materialize_localization(s, TieBreak::Lex);
        LocalizedCategory b = materialize_localization(s, TieBreak::RevLex);
        CHECK(same_tables(*a.cat, *b.cat));
        CHECK(a.q.morphism_map == b.q.morphism_map);
    }
    SECTION("materialization refuses oversized Hom sets") {
        CatPtr c = corpus::walking_arrow();
        CHECK_THROWS_AS(materialize_localization(corpus::with_members(c, {"u"}), TieBreak::Lex,
                                                 nullptr, 0),
                        Error);
    }
}

TEST_CASE("cross-formula agreement") {
    SECTION("chain3 with S={ids,u}: all nine pairs agree") {
        CrossReport r = cross_check_formulas(corpus::with_members(corpus::chain3(), {"u"}));
        CHECK(r.all_agree);
        CHECK(r.pairs.size() == 9);
        for (const auto& e : r.pairs) {
            CHECK(e.right_count == e.bilateral_count);
            CHECK(e.left_count == e.bilateral_count);
            CHECK(e.bijective);
        }
    }
    SECTION("identity classes agree on every fixture") {
        for (const CatPtr& c : {corpus::chain3(), corpus::walking_arrow(), corpus::pair_cat()})
            CHECK(cross_check_formulas(corpus::identity_class(c)).all_agree);
    }
    SECTION("walking_arrow with S={ids,u} agrees") {
        CrossReport r = cross_check_formulas(corpus::with_members(corpus::walking_arrow(), {"u"}));
        CHECK(r.all_agree);
    }
}
