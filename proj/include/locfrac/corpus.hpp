#pragma once

#include "locfrac/multsys.hpp"

// The bundled finite-category corpus. The same data ships as JSON under
// fixtures/; these builders are the in-process source of truth.
namespace locfrac::corpus {

// a --u--> b
inline CatPtr walking_arrow() {
    FiniteCategory c;
    c.objects = {"a", "b"};
    c.morphisms = {{"id_a", "a", "a"}, {"id_b", "b", "b"}, {"u", "a", "b"}};
    c.identity = {{"a", "id_a"}, {"b", "id_b"}};
    c.compose[{"id_a", "id_a"}] = "id_a";
    c.compose[{"id_b", "id_b"}] = "id_b";
    c.compose[{"u", "id_a"}] = "u";
    c.compose[{"id_b", "u"}] = "u";
    return make_cat(std::move(c));
}

// 0 --a01--> 1 --u--> 2, with a02 = u∘a01
inline CatPtr chain3() {
    FiniteCategory c;
    c.objects = {"0", "1", "2"};
    c.morphisms = {{"id_0", "0", "0"}, {"id_1", "1", "1"}, {"id_2", "2", "2"},
                   {"a01", "0", "1"},  {"a02", "0", "2"},  {"u", "1", "2"}};
    c.identity = {{"0", "id_0"}, {"1", "id_1"}, {"2", "id_2"}};
    auto& t = c.compose;
    for (const char* i : {"id_0", "id_1", "id_2"})
        t[{i, i}] = i;
    t[{"a01", "id_0"}] = "a01";
    t[{"id_1", "a01"}] = "a01";
    t[{"a02", "id_0"}] = "a02";
    t[{"id_2", "a02"}] = "a02";
    t[{"u", "id_1"}] = "u";
    t[{"id_2", "u"}] = "u";
    t[{"u", "a01"}] = "a02";
    return make_cat(std::move(c));
}

// a ⇉ b with two parallel arrows and no equalizer
inline CatPtr pair_cat() {
    FiniteCategory c;
    c.objects = {"a", "b"};
    c.morphisms = {
        {"id_a", "a", "a"}, {"id_b", "b", "b"}, {"f", "a", "b"}, {"g", "a", "b"}};
    c.identity = {{"a", "id_a"}, {"b", "id_b"}};
    c.compose[{"id_a", "id_a"}] = "id_a";
    c.compose[{"id_b", "id_b"}] = "id_b";
    c.compose[{"f", "id_a"}] = "f";
    c.compose[{"id_b", "f"}] = "f";
    c.compose[{"g", "id_a"}] = "g";
    c.compose[{"id_b", "g"}] = "g";
    return make_cat(std::move(c));
}

// the full subcategory {0, 2} of chain3
inline CatPtr subchain() {
    FiniteCategory c;
    c.objects = {"0", "2"};
    c.morphisms = {{"id_0", "0", "0"}, {"id_2", "2", "2"}, {"a02", "0", "2"}};
    c.identity = {{"0", "id_0"}, {"2", "id_2"}};
    c.compose[{"id_0", "id_0"}] = "id_0";
    c.compose[{"id_2", "id_2"}] = "id_2";
    c.compose[{"a02", "id_0"}] = "a02";
    c.compose[{"id_2", "a02"}] = "a02";
    return make_cat(std::move(c));
}

// two objects, no connecting arrows
inline CatPtr discrete_pair() {
    FiniteCategory c;
    c.objects = {"x", "y"};
    c.morphisms = {{"id_x", "x", "x"}, {"id_y", "y", "y"}};
    c.identity = {{"x", "id_x"}, {"y", "id_y"}};
    c.compose[{"id_x", "id_x"}] = "id_x";
    c.compose[{"id_y", "id_y"}] = "id_y";
    return make_cat(std::move(c));
}

inline std::set<Id> identities_of(const CatPtr& c) {
    std::set<Id> s;
    for (const auto& [o, m] : c->identity)
        s.insert(m);
    return s;
}

inline MorphismClass identity_class(const CatPtr& c) {
    return MorphismClass{c, identities_of(c), SystemSide::Bilateral};
}

inline MorphismClass with_members(const CatPtr& c, std::initializer_list<Id> extra,
                                  SystemSide side = SystemSide::Bilateral) {
    MorphismClass s{c, identities_of(c), side};
    for (const Id& m : extra)
        s.members.insert(m);
    return s;
}

// reflection F: chain3 -> subchain, F(0)=0, F(1)=F(2)=2
inline FunctorData chain3_reflection(const CatPtr& ch3, const CatPtr& sub) {
    FunctorData f;
    f.source = ch3;
    f.target = sub;
    f.object_map = {{"0", "0"}, {"1", "2"}, {"2", "2"}};
    f.morphism_map = {{"id_0", "id_0"}, {"id_1", "id_2"}, {"id_2", "id_2"},
                      {"a01", "a02"},   {"a02", "a02"},   {"u", "id_2"}};
    return f;
}

// inclusion G: subchain -> chain3
inline FunctorData subchain_inclusion(const CatPtr& sub, const CatPtr& ch3) {
    FunctorData g;
    g.source = sub;
    g.target = ch3;
    g.object_map = {{"0", "0"}, {"2", "2"}};
    g.morphism_map = {{"id_0", "id_0"}, {"id_2", "id_2"}, {"a02", "a02"}};
    return g;
}

// negative control: collapses everything onto 0, breaking the adjunction
inline FunctorData subchain_collapse(const CatPtr& sub, const CatPtr& ch3) {
    FunctorData g;
    g.source = sub;
    g.target = ch3;
    g.object_map = {{"0", "0"}, {"2", "0"}};
    g.morphism_map = {{"id_0", "id_0"}, {"id_2", "id_0"}, {"a02", "id_0"}};
    return g;
}

}  // namespace locfrac::corpus
