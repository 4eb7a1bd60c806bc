#include <catch2/catch_amalgamated.hpp>

#include "locfrac/corpus.hpp"
#include "locfrac/fincat.hpp"

using namespace locfrac;

namespace {

CatPtr parallel_pair_index() {
    FiniteCategory c;
    c.objects = {"p", "q"};
    c.morphisms = {{"id_p", "p", "p"}, {"id_q", "q", "q"}, {"f", "p", "q"}, {"g", "p", "q"}};
    c.identity = {{"p", "id_p"}, {"q", "id_q"}};
    c.compose[{"id_p", "id_p"}] = "id_p";
    c.compose[{"id_q", "id_q"}] = "id_q";
    for (const char* m : {"f", "g"}) {
        c.compose[{m, "id_p"}] = m;
        c.compose[{"id_q", m}] = m;
    }
    return make_cat(std::move(c));
}

CatPtr relabel(const CatPtr& c, const std::map<Id, Id>& objs) {
    FiniteCategory k;
    for (const Id& o : c->objects)
        k.objects.push_back(objs.at(o));
    for (const Morphism& m : c->morphisms)
        k.morphisms.push_back({m.id, objs.at(m.src), objs.at(m.tgt)});
    for (const auto& [o, m] : c->identity)
        k.identity[objs.at(o)] = m;
    k.compose = c->compose;
    return make_cat(std::move(k));
}

}  // namespace

TEST_CASE("walking arrow validates") {
    ValidationReport r = validate_structure(*corpus::walking_arrow());
    CHECK(r.valid());
}

TEST_CASE("broken identity law is reported with its witness") {
    FiniteCategory c = *corpus::walking_arrow();
    c.compose[{"u", "id_a"}] = "id_a";
    ValidationReport r = validate_structure(c);
    REQUIRE_FALSE(r.valid());
    bool found = false;
    for (const Violation& v : r.violations)
        for (const Id& w : v.witnesses)
            if (w == "u" || w == "id_a")
                found = true;
    CHECK(found);
}

TEST_CASE("chain3 with the subchain inclusion functor validates") {
    CatPtr sub = corpus::subchain();
    CatPtr ch3 = corpus::chain3();
    FunctorData inc = corpus::subchain_inclusion(sub, ch3);
    CHECK(validate_structure(*ch3, {}).valid());
    CHECK(validate_structure(*sub, {inc}).valid());
}

TEST_CASE("dangling ids are structural errors, not exceptions") {
    FiniteCategory c = *corpus::walking_arrow();
    c.morphisms.push_back({"w", "a", "ghost"});
    c.sort_tables();
    ValidationReport r = validate_structure(c);
    CHECK_FALSE(r.valid());
}

TEST_CASE("classify_filtered on the corpus") {
    SECTION("chain3 is filtrant") {
        FilteredReport r = classify_filtered(*corpus::chain3());
        CHECK(r.nonempty);
        CHECK(r.connected);
        CHECK(r.pf1);
        CHECK(r.pf2);
        CHECK(r.filtrant);
        CHECK(r.cprime_equivalence_holds);
    }
    SECTION("discrete two-object category is not connected") {
        FilteredReport r = classify_filtered(*corpus::discrete_pair());
        CHECK_FALSE(r.connected);
        CHECK_FALSE(r.filtrant);
        CHECK(r.cprime_equivalence_holds);
    }
    SECTION("unequalized parallel pair fails PF2") {
        FilteredReport r = classify_filtered(*corpus::pair_cat());
        CHECK_FALSE(r.pf2);
        CHECK_FALSE(r.filtrant);
        bool witnessed = false;
        for (const Violation& v : r.witnesses)
            if (v.law == "PF2")
                witnessed = true;
        CHECK(witnessed);
    }
    SECTION("the empty category reports nonempty=false") {
        FiniteCategory e;
        FilteredReport r = classify_filtered(e);
        CHECK_FALSE(r.nonempty);
        CHECK_FALSE(r.filtrant);
    }
    SECTION("relabeling objects does not change the classification") {
        CatPtr c = corpus::chain3();
        CatPtr moved = relabel(c, {{"0", "zz"}, {"1", "aa"}, {"2", "mm"}});
        FilteredReport a = classify_filtered(*c);
        FilteredReport b = classify_filtered(*moved);
        CHECK(a.filtrant == b.filtrant);
        CHECK(a.pf1 == b.pf1);
        CHECK(a.pf2 == b.pf2);
        CHECK(a.connected == b.connected);
    }
}

TEST_CASE("coslice categories of chain3") {
    CatPtr c = corpus::chain3();
    std::set<Id> s = {"id_0", "id_1", "id_2", "u"};

    SECTION("X/S at 1 has objects {id_1, u} and one non-identity arrow") {
        SliceResult r = coslice_category(c, s, "1", SliceSide::Under);
        CHECK(r.cat->objects == std::vector<Id>{"id_1", "u"});
        std::size_t non_id = 0;
        for (const Morphism& m : r.cat->morphisms)
            if (!r.cat->is_identity(m.id)) {
                ++non_id;
                CHECK(m.src == "id_1");
                CHECK(m.tgt == "u");
            }
        CHECK(non_id == 1);
        CHECK(validate_structure(*r.cat, {r.projection}).valid());
        CHECK(r.projection.on_obj("u") == "2");
    }
    SECTION("X/S at 2 is the one-object category") {
        SliceResult r = coslice_category(c, s, "2", SliceSide::Under);
        CHECK(r.cat->objects == std::vector<Id>{"id_2"});
        CHECK(r.cat->morphisms.size() == 1);
    }
    SECTION("S = identities gives a one-object coslice at every object") {
        for (const Id& x : c->objects) {
            SliceResult r = coslice_category(c, corpus::identities_of(c), x);
            CHECK(r.cat->objects.size() == 1);
        }
    }
    SECTION("S/X at 2 has objects {id_2, u} and projects to sources") {
        SliceResult r = coslice_category(c, s, "2", SliceSide::Over);
        CHECK(r.cat->objects == std::vector<Id>{"id_2", "u"});
        CHECK(r.projection.on_obj("u") == "1");
        CHECK(validate_structure(*r.cat, {r.projection}).valid());
    }
}

TEST_CASE("set colimits and limits") {
    SECTION("terminal index object collapse") {
        SetDiagram d;
        d.index = corpus::walking_arrow();
        d.sets["a"] = {"x", "y"};
        d.sets["b"] = {"c"};
        d.maps["id_a"] = {{"x", "x"}, {"y", "y"}};
        d.maps["id_b"] = {{"c", "c"}};
        d.maps["u"] = {{"x", "c"}, {"y", "c"}};
        REQUIRE(d.validate().valid());
        ColimitResult r = set_colimit(d);
        CHECK(r.elements.size() == 1);
    }
    SECTION("parallel pair swap has colimit of size 1 and empty limit") {
        SetDiagram d;
        d.index = parallel_pair_index();
        d.sets["p"] = {"x", "y"};
        d.sets["q"] = {"z", "w"};
        d.maps["id_p"] = {{"x", "x"}, {"y", "y"}};
        d.maps["id_q"] = {{"z", "z"}, {"w", "w"}};
        d.maps["f"] = {{"x", "z"}, {"y", "w"}};
        d.maps["g"] = {{"x", "w"}, {"y", "z"}};
        REQUIRE(d.validate().valid());
        CHECK(set_colimit(d).elements.size() == 1);
        CHECK(set_limit(d).families.empty());
    }
    SECTION("colimit cardinality at a terminal object with no incoming identifications") {
        SetDiagram d;
        d.index = corpus::chain3();
        d.sets["0"] = {"s"};
        d.sets["1"] = {"t"};
        d.sets["2"] = {"u1", "u2"};
        d.maps["id_0"] = {{"s", "s"}};
        d.maps["id_1"] = {{"t", "t"}};
        d.maps["id_2"] = {{"u1", "u1"}, {"u2", "u2"}};
        d.maps["a01"] = {{"s", "t"}};
        d.maps["u"] = {{"t", "u1"}};
        d.maps["a02"] = {{"s", "u1"}};
        REQUIRE(d.validate().valid());
        // the two tokens of the terminal fixture collapse with exactly the
        // identifications arriving at 2, here one chain into u1
        ColimitResult r = set_colimit(d);
        CHECK(r.elements.size() == 2);
        CHECK(r.cocone.at({ "0", "s" }) == r.cocone.at({ "2", "u1" }));
    }
    SECTION("colimit of singletons over a connected index is a singleton") {
        for (const CatPtr& idx : {corpus::chain3(), corpus::walking_arrow(), parallel_pair_index()}) {
            SetDiagram d;
            d.index = idx;
            for (const Id& o : idx->objects)
                d.sets[o] = {"pt"};
            for (const Morphism& m : idx->morphisms)
                d.maps[m.id] = {{"pt", "pt"}};
            CHECK(set_colimit(d).elements.size() == 1);
        }
    }
}

TEST_CASE("opposite is an involution on the tables") {
    for (const CatPtr& c : {corpus::chain3(), corpus::walking_arrow(), corpus::pair_cat()}) {
        CatPtr oo = opposite(opposite(c));
        CHECK(same_tables(*c, *oo));
        CHECK(validate_structure(*opposite(c)).valid());
    }
}

TEST_CASE("product category and cofinality helpers") {
    CatPtr p = product_category(corpus::walking_arrow(), corpus::walking_arrow());
    CHECK(validate_structure(*p).valid());
    CHECK(p->objects.size() == 4);

    // the inclusion of the terminal object of chain3 is cofinal
    FiniteCategory one;
    one.objects = {"t"};
    one.morphisms = {{"id_t", "t", "t"}};
    one.identity = {{"t", "id_t"}};
    one.compose[{"id_t", "id_t"}] = "id_t";
    CatPtr pt = make_cat(std::move(one));
    FunctorData inc;
    inc.source = pt;
    inc.target = corpus::chain3();
    inc.object_map = {{"t", "2"}};
    inc.morphism_map = {{"id_t", "id_2"}};
    CHECK(is_cofinal(inc));

    FunctorData inc0;
    inc0.source = pt;
    inc0.target = corpus::chain3();
    inc0.object_map = {{"t", "0"}};
    inc0.morphism_map = {{"id_t", "id_0"}};
    CHECK_FALSE(is_cofinal(inc0));
}

TEST_CASE("budget exhaustion is reported distinctly") {
    Budget tiny(3);
    try {
        classify_filtered(*corpus::chain3(), &tiny);
        FAIL("expected budget exhaustion");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BudgetExhausted);
    }
}
