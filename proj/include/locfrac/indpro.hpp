#pragma once

#include "locfrac/multsys.hpp"

namespace locfrac {

enum class Variance { Ind, Pro };

// A finite filtrant diagram read covariantly (Ind) or contravariantly (Pro).
// For Pro variance the body is a genuine functor on opposite(index); every
// pro operation runs the Ind code over the opposite ambient category.
struct IndObject {
    CatPtr index;
    FunctorData body;
    Variance variance = Variance::Ind;

    const CatPtr& ambient() const { return body.target; }

    const Id& value_at(const Id& i) const { return body.on_obj(i); }
};

inline IndObject make_ind(CatPtr index, FunctorData body, Variance v = Variance::Ind,
                          bool check = true) {
    IndObject x{std::move(index), std::move(body), v};
    if (check) {
        FilteredReport fr = classify_filtered(*x.index);
        if (!fr.filtrant)
            throw Error(ErrorCode::InternalInconsistency, "index category is not filtrant");
        const FiniteCategory& expected_src =
            v == Variance::Ind ? *x.index : *opposite(x.index);
        if (!same_tables(*x.body.source, expected_src))
            throw Error(ErrorCode::InternalInconsistency, "body source does not match the index");
        ValidationReport vr = validate_structure(*x.body.source, {x.body});
        if (!vr.valid())
            throw Error(ErrorCode::InternalInconsistency, "ind-object body is not a functor",
                        {vr.violations.front().law});
    }
    return x;
}

inline CatPtr one_object_index() {
    FiniteCategory k;
    k.objects = {"*"};
    k.morphisms = {{"id_*", "*", "*"}};
    k.identity["*"] = "id_*";
    k.compose[{"id_*", "id_*"}] = "id_*";
    return make_cat(std::move(k));
}

inline IndObject constant_ind(const CatPtr& c, const Id& x, Variance v = Variance::Ind) {
    CatPtr idx = one_object_index();
    FunctorData body;
    body.source = idx;
    body.target = c;
    body.object_map["*"] = x;
    body.morphism_map["id_*"] = c->id_of(x);
    return make_ind(idx, std::move(body), v, false);
}

inline bool is_constant_shaped(const IndObject& x) { return x.index->objects.size() == 1; }

// Reads a pro-object as an ind-object of the opposite ambient category.
inline IndObject as_ind_over_opposite(const IndObject& pro) {
    if (pro.variance != Variance::Pro)
        throw Error(ErrorCode::InternalInconsistency, "expected a pro-object");
    IndObject out;
    out.index = pro.index;
    out.variance = Variance::Ind;
    out.body.source = pro.index;
    out.body.target = opposite(pro.body.target);
    out.body.object_map = pro.body.object_map;
    out.body.morphism_map = pro.body.morphism_map;
    return out;
}

// One component of a morphism of ind-objects: a canonical member of
// colim_j Hom(F_i, G_j), canonicalized through the colimit engine.
struct ClassTok {
    Id at;   // target index object
    Id mor;  // ambient morphism F_i -> G_at

    bool operator<(const ClassTok& o) const { return at != o.at ? at < o.at : mor < o.mor; }
    bool operator==(const ClassTok& o) const { return at == o.at && mor == o.mor; }
    std::string str() const { return at + ":" + mor; }
};

// colim_j Hom(w, G_j) as a set diagram over the target index.
inline SetDiagram hom_colim_diagram(const Id& w, const IndObject& g) {
    const FiniteCategory& c = *g.ambient();
    SetDiagram d;
    d.index = g.index;
    for (const Id& j : g.index->objects)
        d.sets[j] = c.hom(w, g.value_at(j));
    for (const Morphism& m : g.index->morphisms) {
        const Id& u = g.body.on_mor(m.id);
        auto& fn = d.maps[m.id];
        for (const Id& h : d.sets[m.src])
            fn[h] = c.comp(u, h);
    }
    return d;
}

struct HomColim {
    SetDiagram diagram;
    ColimitResult colim;

    ClassTok canonical(const ClassTok& t) const {
        auto it = colim.cocone.find({t.at, t.mor});
        if (it == colim.cocone.end())
            throw Error(ErrorCode::InternalInconsistency, "token outside the colimit",
                        {t.at, t.mor});
        return {it->second.at, it->second.token};
    }

    std::vector<ClassTok> elements() const {
        std::vector<ClassTok> out;
        for (const ColimElement& e : colim.elements)
            out.push_back({e.at, e.token});
        return out;
    }
};

inline HomColim hom_colim(const Id& w, const IndObject& g, Budget* budget = nullptr) {
    HomColim h;
    h.diagram = hom_colim_diagram(w, g);
    h.colim = set_colimit(h.diagram, budget);
    return h;
}

// A morphism of ind-objects, components keyed by the source index. A
// morphism of pro-objects is stored with its components keyed by the target
// index, matching its presentation as an ind-morphism over the opposite
// ambient (the single dualization layer).
struct IndMorphism {
    IndObject source;
    IndObject target;
    std::map<Id, ClassTok> components;
};

// The ind presentation of a pro morphism.
inline IndMorphism opposite_view(const IndMorphism& m) {
    if (m.source.variance != Variance::Pro)
        throw Error(ErrorCode::InternalInconsistency, "opposite_view expects a pro morphism");
    return IndMorphism{as_ind_over_opposite(m.target), as_ind_over_opposite(m.source),
                       m.components};
}

// Component restriction along a source index arrow m: i -> i'.
inline ClassTok restrict_component(const IndMorphism& p, const Id& m, Budget* budget = nullptr) {
    const FiniteCategory& c = *p.source.ambient();
    const Id& i = p.source.index->src(m);
    const Id& i2 = p.source.index->tgt(m);
    const ClassTok& t = p.components.at(i2);
    HomColim h = hom_colim(p.source.value_at(i), p.target, budget);
    return h.canonical({t.at, c.comp(t.mor, p.source.body.on_mor(m))});
}

inline bool validate_ind_morphism(const IndMorphism& p, Budget* budget = nullptr) {
    if (p.source.variance == Variance::Pro)
        return validate_ind_morphism(opposite_view(p), budget);
    for (const Id& i : p.source.index->objects) {
        auto it = p.components.find(i);
        if (it == p.components.end())
            return false;
        HomColim h = hom_colim(p.source.value_at(i), p.target, budget);
        if (!(h.canonical(it->second) == it->second))
            return false;
    }
    for (const Morphism& m : p.source.index->morphisms)
        if (!(restrict_component(p, m.id, budget) == p.components.at(m.src)))
            return false;
    return true;
}

inline IndMorphism identity_ind_morphism(const IndObject& x, Budget* budget = nullptr) {
    if (x.variance == Variance::Pro) {
        IndMorphism op = identity_ind_morphism(as_ind_over_opposite(x), budget);
        return IndMorphism{x, x, std::move(op.components)};
    }
    IndMorphism p{x, x, {}};
    for (const Id& i : x.index->objects) {
        HomColim h = hom_colim(x.value_at(i), x, budget);
        p.components[i] = h.canonical({i, x.ambient()->id_of(x.value_at(i))});
    }
    return p;
}

inline IndMorphism compose_ind(const IndMorphism& q, const IndMorphism& p,
                               Budget* budget = nullptr) {
    if (p.source.variance == Variance::Pro) {
        IndMorphism op = compose_ind(opposite_view(p), opposite_view(q), budget);
        return IndMorphism{p.source, q.target, std::move(op.components)};
    }
    const FiniteCategory& c = *p.source.ambient();
    IndMorphism r{p.source, q.target, {}};
    for (const Id& i : p.source.index->objects) {
        const ClassTok& a = p.components.at(i);
        const ClassTok& b = q.components.at(a.at);
        HomColim h = hom_colim(p.source.value_at(i), q.target, budget);
        r.components[i] = h.canonical({b.at, c.comp(b.mor, a.mor)});
    }
    return r;
}

inline bool ind_equal(const IndMorphism& a, const IndMorphism& b) {
    return a.components == b.components;
}

// Full enumeration of Hom_{Ind}(f, g) = lim_i colim_j Hom(F_i, G_j).
inline std::vector<IndMorphism> ind_hom(const IndObject& f, const IndObject& g,
                                        Budget* budget = nullptr) {
    if (f.variance != g.variance)
        throw Error(ErrorCode::InternalInconsistency, "ind_hom with mismatched variance");
    if (f.variance == Variance::Pro) {
        IndObject fo = as_ind_over_opposite(f);
        IndObject go = as_ind_over_opposite(g);
        std::vector<IndMorphism> ops = ind_hom(go, fo, budget);
        std::vector<IndMorphism> out;
        for (IndMorphism& p : ops)
            out.push_back(IndMorphism{f, g, std::move(p.components)});
        return out;
    }
    if (!same_tables(*f.ambient(), *g.ambient()))
        throw Error(ErrorCode::InternalInconsistency, "ind_hom across different ambients");

    std::map<Id, HomColim> per;
    for (const Id& i : f.index->objects)
        per.emplace(i, hom_colim(f.value_at(i), g, budget));

    SetDiagram lim;
    lim.index = opposite(f.index);
    for (const Id& i : f.index->objects) {
        auto& set = lim.sets[i];
        for (const ClassTok& t : per.at(i).elements())
            set.push_back(t.str());
    }
    auto split = [](const std::string& s) {
        auto c = s.find(':');
        return ClassTok{s.substr(0, c), s.substr(c + 1)};
    };
    const FiniteCategory& amb = *f.ambient();
    for (const Morphism& m : lim.index->morphisms) {
        // m: i' -> i in the opposite index; original arrow i -> i'.
        const Id& fm = f.body.on_mor(m.id);
        auto& fn = lim.maps[m.id];
        for (const std::string& tok : lim.sets[m.src]) {
            ClassTok t = split(tok);
            fn[tok] = per.at(m.tgt).canonical({t.at, amb.comp(t.mor, fm)}).str();
        }
    }
    LimitResult lr = set_limit(lim, budget);
    std::vector<IndMorphism> out;
    for (const auto& fam : lr.families) {
        IndMorphism p{f, g, {}};
        for (std::size_t k = 0; k < lr.object_order.size(); ++k)
            p.components[lr.object_order[k]] = split(fam[k]);
        out.push_back(std::move(p));
    }
    return out;
}

inline std::optional<IndMorphism> find_inverse(const IndMorphism& p, Budget* budget = nullptr) {
    IndMorphism id_src = identity_ind_morphism(p.source, budget);
    IndMorphism id_tgt = identity_ind_morphism(p.target, budget);
    for (const IndMorphism& q : ind_hom(p.target, p.source, budget))
        if (ind_equal(compose_ind(q, p, budget), id_src) &&
            ind_equal(compose_ind(p, q, budget), id_tgt))
            return q;
    return std::nullopt;
}

inline bool is_ind_isomorphism(const IndMorphism& p, Budget* budget = nullptr) {
    return find_inverse(p, budget).has_value();
}

inline std::optional<std::pair<IndMorphism, IndMorphism>> ind_isomorphic(const IndObject& a,
                                                                         const IndObject& b,
                                                                         Budget* budget = nullptr) {
    for (const IndMorphism& p : ind_hom(a, b, budget)) {
        auto q = find_inverse(p, budget);
        if (q)
            return std::make_pair(p, *q);
    }
    return std::nullopt;
}

// Strictness: all transition morphisms are monomorphisms, tested by
// exhaustive cancellation.
inline bool is_strict(const IndObject& x, Budget* budget = nullptr) {
    Budget local;
    Budget& bud = budget ? *budget : local;
    const FiniteCategory& c = *x.ambient();
    const FiniteCategory& body_src = *x.body.source;
    for (const Morphism& m : body_src.morphisms) {
        const Id& u = x.body.on_mor(m.id);
        const Morphism& mu = c.must_find(u);
        for (const Morphism& a : c.morphisms)
            for (const Morphism& b : c.morphisms) {
                if (a.tgt != mu.src || b.tgt != mu.src || a.src != b.src || a.id == b.id)
                    continue;
                bud.tick();
                if (c.comp(u, a.id) == c.comp(u, b.id))
                    return false;
            }
    }
    return true;
}

// --- Essential constancy ------------------------------------------------

struct EssentiallyConstant {
    Id representative;
    Id i0;
    Id section;               // f: L -> F(i0)
    std::map<Id, Id> cocone;  // i -> (F(i) -> L)
    IndMorphism to_const;     // x -> const L
    IndMorphism from_const;   // const L -> x
};

// Searches for a representative with the reverse-limit data: a cocone ι, an
// index i0 and f: L -> F(i0) such that ι_{i0}∘f = id and every ι is split by
// the diagram cofinally. Candidates: diagram values first, then all ambient
// objects, lexicographically.
inline std::optional<EssentiallyConstant> essentially_constant(const IndObject& x,
                                                               Budget* budget = nullptr) {
    Budget local;
    Budget& bud = budget ? *budget : local;
    if (x.variance == Variance::Pro) {
        IndObject xo = as_ind_over_opposite(x);
        auto r = essentially_constant(xo, budget);
        if (!r)
            return std::nullopt;
        // Rewrap in the original orientation: the op-land cocone becomes the
        // pro morphism const L -> x and the op-land section the morphism
        // x -> const L.
        EssentiallyConstant out = *r;
        IndObject cl = constant_ind(x.ambient(), out.representative, Variance::Pro);
        out.from_const = IndMorphism{cl, x, std::move(r->to_const.components)};
        out.to_const = IndMorphism{x, cl, std::move(r->from_const.components)};
        return out;
    }

    const FiniteCategory& c = *x.ambient();
    std::vector<Id> candidates;
    for (const Id& i : x.index->objects) {
        const Id& v = x.value_at(i);
        if (std::find(candidates.begin(), candidates.end(), v) == candidates.end())
            candidates.push_back(v);
    }
    std::sort(candidates.begin(), candidates.end());
    for (const Id& v : c.objects)
        if (std::find(candidates.begin(), candidates.end(), v) == candidates.end())
            candidates.push_back(v);

    for (const Id& L : candidates) {
        // cocones F => const L, i.e. the limit of Hom(F(i), L) over I^op
        SetDiagram cd;
        cd.index = opposite(x.index);
        for (const Id& i : x.index->objects)
            cd.sets[i] = c.hom(x.value_at(i), L);
        for (const Morphism& m : cd.index->morphisms) {
            const Id& u = x.body.on_mor(m.id);
            auto& fn = cd.maps[m.id];
            for (const Id& h : cd.sets[m.src])
                fn[h] = c.comp(h, u);
        }
        LimitResult cocones = set_limit(cd, &bud);
        for (const auto& fam : cocones.families) {
            std::map<Id, Id> iota;
            for (std::size_t k = 0; k < cocones.object_order.size(); ++k)
                iota[cocones.object_order[k]] = fam[k];
            for (const Id& i0 : x.index->objects)
                for (const Id& f : c.hom(L, x.value_at(i0))) {
                    bud.tick();
                    if (c.comp(iota.at(i0), f) != c.id_of(L))
                        continue;  // (b)
                    bool all = true;
                    for (const Id& i : x.index->objects) {
                        bool found = false;
                        for (const Id& s0 : x.index->from(i0)) {
                            for (const Id& s : x.index->from(i)) {
                                if (x.index->tgt(s0) != x.index->tgt(s))
                                    continue;
                                bud.tick();
                                Id lhs = c.comp(x.body.on_mor(s0), c.comp(f, iota.at(i)));
                                if (lhs == x.body.on_mor(s)) {
                                    found = true;
                                    break;
                                }
                            }
                            if (found)
                                break;
                        }
                        if (!found) {
                            all = false;
                            break;
                        }
                    }
                    if (!all)
                        continue;  // (a) failed
                    EssentiallyConstant out;
                    out.representative = L;
                    out.i0 = i0;
                    out.section = f;
                    out.cocone = iota;
                    IndObject cl = constant_ind(x.ambient(), L);
                    IndMorphism toc{x, cl, {}};
                    for (const Id& i : x.index->objects) {
                        HomColim h = hom_colim(x.value_at(i), cl, budget);
                        toc.components[i] = h.canonical({"*", iota.at(i)});
                    }
                    IndMorphism fromc{cl, x, {}};
                    {
                        HomColim h = hom_colim(L, x, budget);
                        fromc.components["*"] = h.canonical({i0, f});
                    }
                    if (!ind_equal(compose_ind(toc, fromc, budget),
                                   identity_ind_morphism(cl, budget)) ||
                        !ind_equal(compose_ind(fromc, toc, budget),
                                   identity_ind_morphism(x, budget)))
                        throw Error(ErrorCode::InternalInconsistency,
                                    "essential-constancy witness failed the inverse check", {L});
                    out.to_const = std::move(toc);
                    out.from_const = std::move(fromc);
                    return out;
                }
        }
    }
    return std::nullopt;
}

// --- Parallelization (Artin–Mazur) ---------------------------------------

inline CatPtr arrow_category(const CatPtr& c) {
    FiniteCategory k;
    for (const Morphism& m : c->morphisms)
        k.objects.push_back(m.id);
    auto mid = [](const Id& f, const Id& g, const Id& u, const Id& v) {
        return cat_str("[", f, ">", g, ";", u, ";", v, "]");
    };
    for (const Morphism& f : c->morphisms)
        for (const Morphism& g : c->morphisms)
            for (const Id& u : c->hom(f.src, g.src))
                for (const Id& v : c->hom(f.tgt, g.tgt))
                    if (c->comp(v, f.id) == c->comp(g.id, u))
                        k.morphisms.push_back({mid(f.id, g.id, u, v), f.id, g.id});
    for (const Morphism& f : c->morphisms)
        k.identity[f.id] = mid(f.id, f.id, c->id_of(f.src), c->id_of(f.tgt));
    for (const Morphism& f : c->morphisms)
        for (const Morphism& g : c->morphisms)
            for (const Id& u1 : c->hom(f.src, g.src))
                for (const Id& v1 : c->hom(f.tgt, g.tgt)) {
                    if (c->comp(v1, f.id) != c->comp(g.id, u1))
                        continue;
                    for (const Morphism& h : c->morphisms)
                        for (const Id& u2 : c->hom(g.src, h.src))
                            for (const Id& v2 : c->hom(g.tgt, h.tgt)) {
                                if (c->comp(v2, g.id) != c->comp(h.id, u2))
                                    continue;
                                k.compose[{mid(g.id, h.id, u2, v2), mid(f.id, g.id, u1, v1)}] =
                                    mid(f.id, h.id, c->comp(u2, u1), c->comp(v2, v1));
                            }
                }
    return make_cat(std::move(k));
}

struct ParallelizationResult {
    CatPtr phi;
    FunctorData arrow_diagram;  // into the arrow category of the ambient
    FunctorData proj_source;    // to the source index
    FunctorData proj_target;    // to the target index
    bool filtrant = false;
    bool cofinal_source = false;
    bool cofinal_target = false;
    bool roundtrip_ok = false;
};

// The category Φ_f of components of f, with the two cofinal projections. The
// arrow diagram re-assembles to a morphism equal to f.
inline ParallelizationResult parallelize(const IndMorphism& f, Budget* budget = nullptr) {
    Budget local;
    Budget& bud = budget ? *budget : local;
    const IndObject& A = f.source;
    const IndObject& B = f.target;
    const FiniteCategory& c = *A.ambient();

    std::map<Id, HomColim> per;
    for (const Id& i : A.index->objects)
        per.emplace(i, hom_colim(A.value_at(i), B, budget));

    struct Comp {
        Id i, j, phi;
    };
    std::vector<Comp> comps;
    auto oid = [](const Comp& co) { return cat_str("(", co.i, ";", co.j, ";", co.phi, ")"); };
    for (const Id& i : A.index->objects)
        for (const Id& j : B.index->objects)
            for (const Id& phi : c.hom(A.value_at(i), B.value_at(j))) {
                bud.tick();
                if (per.at(i).canonical({j, phi}) == f.components.at(i))
                    comps.push_back({i, j, phi});
            }

    FiniteCategory k;
    for (const Comp& co : comps)
        k.objects.push_back(oid(co));
    auto mid = [&](const Comp& a, const Comp& b, const Id& m, const Id& n) {
        return cat_str("[", oid(a), ">", oid(b), ";", m, ";", n, "]");
    };
    FunctorData ps, pt, ad;
    std::map<Id, std::pair<Id, Id>> arrow_of;
    for (const Comp& a : comps)
        for (const Comp& b : comps)
            for (const Id& m : A.index->hom(a.i, b.i))
                for (const Id& n : B.index->hom(a.j, b.j)) {
                    bud.tick();
                    if (c.comp(B.body.on_mor(n), a.phi) == c.comp(b.phi, A.body.on_mor(m))) {
                        Id id = mid(a, b, m, n);
                        k.morphisms.push_back({id, oid(a), oid(b)});
                        arrow_of[id] = {m, n};
                    }
                }
    for (const Comp& co : comps)
        k.identity[oid(co)] =
            mid(co, co, A.index->id_of(co.i), B.index->id_of(co.j));
    for (const Morphism& p : k.morphisms)
        for (const Morphism& q : k.morphisms) {
            if (p.tgt != q.src)
                continue;
            const auto& [m1, n1] = arrow_of.at(p.id);
            const auto& [m2, n2] = arrow_of.at(q.id);
            Comp a, b;
            for (const Comp& co : comps) {
                if (oid(co) == p.src)
                    a = co;
                if (oid(co) == q.tgt)
                    b = co;
            }
            k.compose[{q.id, p.id}] =
                mid(a, b, A.index->comp(m2, m1), B.index->comp(n2, n1));
        }

    ParallelizationResult out;
    out.phi = make_cat(std::move(k));

    ps.source = out.phi;
    ps.target = A.index;
    pt.source = out.phi;
    pt.target = B.index;
    CatPtr fl = arrow_category(A.ambient());
    ad.source = out.phi;
    ad.target = fl;
    for (const Comp& co : comps) {
        ps.object_map[oid(co)] = co.i;
        pt.object_map[oid(co)] = co.j;
        ad.object_map[oid(co)] = co.phi;
    }
    for (const auto& [id, mn] : arrow_of) {
        ps.morphism_map[id] = mn.first;
        pt.morphism_map[id] = mn.second;
        Id srcmor, tgtmor;
        for (const Comp& co : comps) {
            if (oid(co) == out.phi->src(id))
                srcmor = co.phi;
            if (oid(co) == out.phi->tgt(id))
                tgtmor = co.phi;
        }
        ad.morphism_map[id] = cat_str("[", srcmor, ">", tgtmor, ";", A.body.on_mor(mn.first), ";",
                                      B.body.on_mor(mn.second), "]");
    }
    out.proj_source = std::move(ps);
    out.proj_target = std::move(pt);
    out.arrow_diagram = std::move(ad);

    out.filtrant = classify_filtered(*out.phi, &bud).filtrant;
    out.cofinal_source = is_cofinal(out.proj_source, &bud);
    out.cofinal_target = is_cofinal(out.proj_target, &bud);

    // Round trip: reassemble a morphism from the components and compare.
    out.roundtrip_ok = true;
    for (const Id& i : A.index->objects) {
        std::optional<ClassTok> got;
        for (const Comp& co : comps) {
            for (const Id& m : A.index->hom(i, co.i)) {
                got = per.at(i).canonical({co.j, c.comp(co.phi, A.body.on_mor(m))});
                break;
            }
            if (got)
                break;
        }
        if (!got || !(*got == f.components.at(i)))
            out.roundtrip_ok = false;
    }
    return out;
}

// --- Extension of functors to Ind ----------------------------------------

// A functor C -> Ind(D) (or Pro(D)), with the morphism action materialized.
struct IndValuedFunctor {
    CatPtr source;
    CatPtr ambient_target;
    std::map<Id, IndObject> obj;
    std::map<Id, IndMorphism> mor;

    const IndObject& at(const Id& x) const { return obj.at(x); }
};

inline IndValuedFunctor constant_embedding_functor(const FunctorData& f,
                                                   Variance v = Variance::Ind,
                                                   Budget* budget = nullptr) {
    IndValuedFunctor out;
    out.source = f.source;
    out.ambient_target = f.target;
    for (const Id& x : f.source->objects)
        out.obj.emplace(x, constant_ind(f.target, f.on_obj(x), v));
    for (const Morphism& m : f.source->morphisms) {
        const IndObject& a = out.obj.at(m.src);
        const IndObject& b = out.obj.at(m.tgt);
        IndMorphism p{a, b, {}};
        if (v == Variance::Ind) {
            HomColim h = hom_colim(a.value_at("*"), b, budget);
            p.components["*"] = h.canonical({"*", f.on_mor(m.id)});
        } else {
            IndObject bo = as_ind_over_opposite(b);
            HomColim h = hom_colim(b.value_at("*"), as_ind_over_opposite(a), budget);
            p.components["*"] = h.canonical({"*", f.on_mor(m.id)});
        }
        out.mor.emplace(m.id, std::move(p));
    }
    return out;
}

inline bool validate_ind_valued_functor(const IndValuedFunctor& F, Budget* budget = nullptr) {
    for (const Morphism& m : F.source->morphisms) {
        auto it = F.mor.find(m.id);
        if (it == F.mor.end())
            return false;
        if (!validate_ind_morphism(it->second, budget))
            return false;
    }
    for (const Id& x : F.source->objects)
        if (!ind_equal(F.mor.at(F.source->id_of(x)),
                       identity_ind_morphism(F.obj.at(x), budget)))
            return false;
    for (const auto& [gf, h] : F.source->compose) {
        const IndMorphism& g = F.mor.at(gf.first);
        const IndMorphism& f = F.mor.at(gf.second);
        if (!ind_equal(compose_ind(g, f, budget), F.mor.at(h)))
            return false;
    }
    return true;
}

// Flattening of F applied to an ind-object x: the index is the
// Grothendieck-style pairing of x's index with the per-object indices,
// morphisms being index arrows together with a component witness.
struct FlattenResult {
    IndObject flat;
    // (i, k) pairs backing each flattened index object
    std::map<Id, std::pair<Id, Id>> pair_of;
    std::map<Id, std::pair<Id, Id>> arrow_of;  // morphism -> (index arrow m, witness h)
};

inline FlattenResult extend_to_ind(const IndValuedFunctor& F, const IndObject& x,
                                   Budget* budget = nullptr) {
    Budget local;
    Budget& bud = budget ? *budget : local;
    const FiniteCategory& amb = *F.ambient_target;
    FlattenResult out;
    auto oid = [](const Id& i, const Id& k) { return cat_str("(", i, ";", k, ")"); };

    FiniteCategory ph;
    for (const Id& i : x.index->objects)
        for (const Id& k : F.at(x.value_at(i)).index->objects) {
            ph.objects.push_back(oid(i, k));
            out.pair_of[oid(i, k)] = {i, k};
        }
    auto mid = [&](const Id& a, const Id& b, const Id& m, const Id& h) {
        return cat_str("[", a, ">", b, ";", m, ";", h, "]");
    };
    FunctorData body;
    for (const Id& a : ph.objects)
        for (const Id& b : ph.objects) {
            const auto& [i1, k1] = out.pair_of.at(a);
            const auto& [i2, k2] = out.pair_of.at(b);
            const IndObject& Y1 = F.at(x.value_at(i1));
            const IndObject& Y2 = F.at(x.value_at(i2));
            for (const Id& m : x.index->hom(i1, i2)) {
                const IndMorphism& Fm = F.mor.at(x.body.on_mor(m));
                HomColim h = hom_colim(Y1.value_at(k1), Y2, &bud);
                for (const Id& w : amb.hom(Y1.value_at(k1), Y2.value_at(k2))) {
                    bud.tick();
                    if (h.canonical({k2, w}) == Fm.components.at(k1)) {
                        Id id = mid(a, b, m, w);
                        ph.morphisms.push_back({id, a, b});
                        out.arrow_of[id] = {m, w};
                    }
                }
            }
        }
    for (const Id& a : ph.objects) {
        const auto& [i, k] = out.pair_of.at(a);
        const IndObject& Y = F.at(x.value_at(i));
        ph.identity[a] = mid(a, a, x.index->id_of(i), amb.id_of(Y.value_at(k)));
    }
    for (const Morphism& p : ph.morphisms)
        for (const Morphism& q : ph.morphisms) {
            if (p.tgt != q.src)
                continue;
            bud.tick();
            const auto& [m1, h1] = out.arrow_of.at(p.id);
            const auto& [m2, h2] = out.arrow_of.at(q.id);
            Id comp = mid(p.src, q.tgt, x.index->comp(m2, m1), amb.comp(h2, h1));
            if (!out.arrow_of.count(comp))
                throw Error(ErrorCode::InternalInconsistency,
                            "flattened index not closed under composition (functor data broken)",
                            {q.id, p.id});
            ph.compose[{q.id, p.id}] = comp;
        }

    CatPtr phi = make_cat(std::move(ph));
    body.source = phi;
    body.target = F.ambient_target;
    for (const Id& a : phi->objects) {
        const auto& [i, k] = out.pair_of.at(a);
        body.object_map[a] = F.at(x.value_at(i)).value_at(k);
    }
    for (const auto& [id, mw] : out.arrow_of)
        body.morphism_map[id] = mw.second;
    out.flat = make_ind(phi, std::move(body), Variance::Ind);
    return out;
}

// Action of the extension on a morphism of ind-objects: component at (i,k)
// is obtained by pushing the representative through F.
inline IndMorphism extend_map(const IndValuedFunctor& F, const FlattenResult& fx,
                              const FlattenResult& fy, const IndMorphism& p,
                              Budget* budget = nullptr) {
    const FiniteCategory& amb = *F.ambient_target;
    IndMorphism out{fx.flat, fy.flat, {}};
    for (const Id& a : fx.flat.index->objects) {
        const auto& [i, k] = fx.pair_of.at(a);
        const ClassTok& rep = p.components.at(i);  // (i2, g : X_i -> X'_{i2})
        const IndMorphism& Fg = F.mor.at(rep.mor);
        const ClassTok& comp = Fg.components.at(k);  // (k2, h)
        HomColim h = hom_colim(fx.flat.value_at(a), fy.flat, budget);
        out.components[a] = h.canonical({cat_str("(", rep.at, ";", comp.at, ")"), comp.mor});
    }
    return out;
}

// --- Generalized adjunctions ----------------------------------------------

struct AdjPairEntry {
    Id x, xp;
    std::size_t left_count = 0, right_count = 0;
};

struct AdjReport {
    bool ok = true;
    std::vector<AdjPairEntry> pairs;
    std::vector<Violation> witnesses;
};

namespace detail {

// Natural family of bijections between two finite Hom families, found by
// backtracking; naturality is checked against every supplied square.
struct NatBijProblem {
    // per pair: the two element lists
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> sets;
    // squares: (pair_from, pair_to, left action map, right action map)
    struct Square {
        std::size_t from, to;
        std::map<std::string, std::string> left, right;
    };
    std::vector<Square> squares;
};

inline bool solve_nat_bij(const NatBijProblem& pr,
                          std::vector<std::map<std::string, std::string>>& solution,
                          Budget& bud) {
    std::size_t n = pr.sets.size();
    solution.assign(n, {});
    std::vector<std::vector<std::vector<std::size_t>>> perms(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (pr.sets[i].first.size() != pr.sets[i].second.size())
            return false;
        std::vector<std::size_t> p(pr.sets[i].first.size());
        for (std::size_t j = 0; j < p.size(); ++j)
            p[j] = j;
        do {
            bud.tick();
            perms[i].push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    std::vector<std::size_t> choice(n, 0);
    auto bij_at = [&](std::size_t i) {
        std::map<std::string, std::string> b;
        const auto& p = perms[i][choice[i]];
        for (std::size_t j = 0; j < p.size(); ++j)
            b[pr.sets[i].first[j]] = pr.sets[i].second[p[j]];
        return b;
    };
    // check squares whose both endpoints are < bound
    auto consistent = [&](std::size_t bound) {
        for (const auto& sq : pr.squares) {
            if (sq.from >= bound || sq.to >= bound)
                continue;
            auto bf = bij_at(sq.from);
            auto bt = bij_at(sq.to);
            for (const auto& [a, av] : bf) {
                auto l = sq.left.find(a);
                if (l == sq.left.end())
                    continue;
                auto r = sq.right.find(av);
                if (r == sq.right.end() || bt.at(l->second) != r->second)
                    return false;
            }
        }
        return true;
    };
    std::size_t i = 0;
    while (true) {
        bud.tick();
        if (consistent(i + 1)) {
            if (i + 1 == n) {
                for (std::size_t j = 0; j < n; ++j)
                    solution[j] = bij_at(j);
                return true;
            }
            ++i;
            choice[i] = 0;
            continue;
        }
        while (choice[i] + 1 == perms[i].size()) {
            if (i == 0)
                return false;
            --i;
        }
        ++choice[i];
    }
}

}  // namespace detail

// F: C -> Pro(C') and G: C' -> Ind(C) are generalized adjoints when
// Hom_{Pro C'}(FX, X') ≅ Hom_{Ind C}(X, GX') naturally in both slots.
inline AdjReport generalized_adjunction_check(const IndValuedFunctor& F,
                                              const IndValuedFunctor& G,
                                              const std::vector<std::pair<Id, Id>>& pairs,
                                              Budget* budget = nullptr) {
    Budget local;
    Budget& bud = budget ? *budget : local;
    AdjReport rep;

    const CatPtr& c = F.source;          // C
    const CatPtr& cp = G.source;         // C'
    auto key = [&](const Id& x, const Id& xp) { return cat_str(x, "~", xp); };

    std::map<std::string, std::vector<IndMorphism>> left, right;
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [x, xp] = pairs[i];
        IndObject cxp = constant_ind(F.ambient_target, xp, Variance::Pro);
        IndObject cx = constant_ind(G.ambient_target, x, Variance::Ind);
        left[key(x, xp)] = ind_hom(F.at(x), cxp, &bud);
        right[key(x, xp)] = ind_hom(cx, G.at(xp), &bud);
        pos[key(x, xp)] = i;
        AdjPairEntry e{x, xp, left[key(x, xp)].size(), right[key(x, xp)].size()};
        rep.pairs.push_back(e);
        if (e.left_count != e.right_count) {
            rep.ok = false;
            rep.witnesses.push_back({"cardinality", {x, xp}, "Hom cardinalities differ"});
        }
    }
    if (!rep.ok)
        return rep;

    auto mor_str = [](const IndMorphism& m) {
        std::string s;
        for (const auto& [i, t] : m.components)
            s += i + "=" + t.str() + ";";
        return s;
    };
    detail::NatBijProblem pr;
    pr.sets.resize(pairs.size());
    std::map<std::string, std::map<std::string, const IndMorphism*>> by_str;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string k = key(pairs[i].first, pairs[i].second);
        for (const IndMorphism& m : left[k]) {
            pr.sets[i].first.push_back(mor_str(m));
            by_str["L" + k][mor_str(m)] = &m;
        }
        for (const IndMorphism& m : right[k]) {
            pr.sets[i].second.push_back(mor_str(m));
            by_str["R" + k][mor_str(m)] = &m;
        }
    }

    // naturality squares over every morphism of the fixtures
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = 0; b < pairs.size(); ++b) {
            const auto& [x1, xp1] = pairs[a];
            const auto& [x2, xp2] = pairs[b];
            for (const Id& phi : c->hom(x2, x1))          // contravariant slot
                for (const Id& psi : cp->hom(xp1, xp2)) {  // covariant slot
                    bud.tick();
                    detail::NatBijProblem::Square sq;
                    sq.from = a;
                    sq.to = b;
                    const IndMorphism& Fphi = F.mor.at(phi);
                    const IndMorphism& Gpsi = G.mor.at(psi);
                    IndMorphism cpsi_pro{constant_ind(F.ambient_target, xp1, Variance::Pro),
                                         constant_ind(F.ambient_target, xp2, Variance::Pro),
                                         {}};
                    {
                        IndObject s = as_ind_over_opposite(cpsi_pro.source);
                        IndObject t = as_ind_over_opposite(cpsi_pro.target);
                        HomColim h = hom_colim(t.value_at("*"), s, &bud);
                        cpsi_pro.components["*"] = h.canonical({"*", psi});
                    }
                    IndMorphism cphi_ind{constant_ind(G.ambient_target, x2),
                                         constant_ind(G.ambient_target, x1),
                                         {}};
                    {
                        HomColim h = hom_colim(x2, cphi_ind.target, &bud);
                        cphi_ind.components["*"] = h.canonical({"*", phi});
                    }
                    for (const IndMorphism& m : left[key(x1, xp1)]) {
                        IndMorphism r = compose_ind(cpsi_pro, compose_ind(m, Fphi, &bud), &bud);
                        sq.left[mor_str(m)] = mor_str(r);
                    }
                    for (const IndMorphism& m : right[key(x1, xp1)]) {
                        IndMorphism r = compose_ind(Gpsi, compose_ind(m, cphi_ind, &bud), &bud);
                        sq.right[mor_str(m)] = mor_str(r);
                    }
                    pr.squares.push_back(std::move(sq));
                }
        }

    std::vector<std::map<std::string, std::string>> sol;
    if (!detail::solve_nat_bij(pr, sol, bud)) {
        rep.ok = false;
        rep.witnesses.push_back({"naturality", {}, "no natural family of bijections exists"});
    }
    return rep;
}

}  // namespace locfrac
