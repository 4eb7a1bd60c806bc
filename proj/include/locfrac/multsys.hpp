#pragma once

#include "locfrac/fincat.hpp"

namespace locfrac {

enum class SystemSide { Right, Left, Bilateral };
enum class Formula { Right, Left, Bilateral };

struct MorphismClass {
    CatPtr category;
    std::set<Id> members;
    SystemSide declared = SystemSide::Bilateral;
};

struct SystemReport {
    bool s1 = false, s2 = false;
    bool right_s3 = false, left_s3 = false;
    bool right_s4 = false, left_s4 = false;
    bool right_quasi_saturated = false, left_quasi_saturated = false;
    std::vector<Violation> witnesses;

    bool right_system() const { return s1 && s2 && right_s3 && right_s4; }
    bool left_system() const { return s1 && s2 && left_s3 && left_s4; }
    bool supports(Formula f) const {
        switch (f) {
            case Formula::Right: return right_system() && right_quasi_saturated;
            case Formula::Left: return left_system() && left_quasi_saturated;
            default:
                return right_system() && left_system() && right_quasi_saturated &&
                       left_quasi_saturated;
        }
    }
};

struct SquareCompletion {
    Id t;        // the S-leg of the completing cospan/span
    Id through;  // the other leg
};

namespace detail {
template <typename T>
void keep_extreme(std::optional<T>& best, const T& cand, TieBreak tie) {
    auto less = [](const T& a, const T& b) {
        return a.t != b.t ? a.t < b.t : a.through < b.through;
    };
    if (!best || (tie == TieBreak::Lex ? less(cand, *best) : less(*best, cand)))
        best = cand;
}
}  // namespace detail

// Right (S3): a span s: X -> X' in S, f: X -> Y completes to a cospan
// t: Y -> Y' in S, g: X' -> Y' with g∘s = t∘f.
inline std::optional<SquareCompletion> complete_square_right(const FiniteCategory& c,
                                                             const std::set<Id>& s_members,
                                                             const Id& s, const Id& f,
                                                             TieBreak tie = TieBreak::Lex) {
    if (c.src(s) != c.src(f))
        throw Error(ErrorCode::InternalInconsistency, "not a span", {s, f});
    std::optional<SquareCompletion> best;
    for (const Morphism& t : c.morphisms) {
        if (t.src != c.tgt(f) || !s_members.count(t.id))
            continue;
        for (const Id& g : c.hom(c.tgt(s), t.tgt))
            if (c.comp(g, s) == c.comp(t.id, f))
                detail::keep_extreme(best, SquareCompletion{t.id, g}, tie);
    }
    return best;
}

// Left (S3): a cospan s: X' -> X in S, f: Y -> X completes to a span
// t: Y' -> Y in S, g: Y' -> X' with s∘g = f∘t.
inline std::optional<SquareCompletion> complete_square_left(const FiniteCategory& c,
                                                            const std::set<Id>& s_members,
                                                            const Id& s, const Id& f,
                                                            TieBreak tie = TieBreak::Lex) {
    if (c.tgt(s) != c.tgt(f))
        throw Error(ErrorCode::InternalInconsistency, "not a cospan", {s, f});
    std::optional<SquareCompletion> best;
    for (const Morphism& t : c.morphisms) {
        if (t.tgt != c.src(f) || !s_members.count(t.id))
            continue;
        for (const Id& g : c.hom(t.src, c.src(s)))
            if (c.comp(s, g) == c.comp(f, t.id))
                detail::keep_extreme(best, SquareCompletion{t.id, g}, tie);
    }
    return best;
}

// Right (S4) conclusion: t in S with t∘f = t∘g.
inline std::optional<Id> equalize_right(const FiniteCategory& c, const std::set<Id>& s_members,
                                        const Id& f, const Id& g, TieBreak tie = TieBreak::Lex) {
    std::optional<Id> best;
    for (const Morphism& t : c.morphisms) {
        if (t.src != c.tgt(f) || !s_members.count(t.id))
            continue;
        if (c.comp(t.id, f) == c.comp(t.id, g))
            if (!best || (tie == TieBreak::Lex ? t.id < *best : t.id > *best))
                best = t.id;
    }
    return best;
}

inline std::optional<Id> equalize_left(const FiniteCategory& c, const std::set<Id>& s_members,
                                       const Id& f, const Id& g, TieBreak tie = TieBreak::Lex) {
    std::optional<Id> best;
    for (const Morphism& t : c.morphisms) {
        if (t.tgt != c.src(f) || !s_members.count(t.id))
            continue;
        if (c.comp(f, t.id) == c.comp(g, t.id))
            if (!best || (tie == TieBreak::Lex ? t.id < *best : t.id > *best))
                best = t.id;
    }
    return best;
}

inline SystemReport validate_mult_system(const MorphismClass& s, Budget* budget = nullptr) {
    Budget local;
    Budget& b = budget ? *budget : local;
    const FiniteCategory& c = *s.category;
    SystemReport rep;
    auto bad = [&](std::string law, std::vector<Id> w, std::string d) {
        rep.witnesses.push_back({std::move(law), std::move(w), std::move(d)});
    };

    rep.s1 = true;
    for (const Id& x : c.objects)
        if (!s.members.count(c.id_of(x))) {
            rep.s1 = false;
            bad("S1", {x}, "identity not in S");
        }
    for (const Id& m : s.members)
        if (!c.has_morphism(m)) {
            rep.s1 = false;
            bad("S1", {m}, "member is not a morphism");
        }

    rep.s2 = true;
    for (const Id& f : s.members)
        for (const Id& g : s.members) {
            if (!c.has_morphism(f) || !c.has_morphism(g))
                continue;
            auto gf = c.try_compose(g, f);
            b.tick();
            if (gf && !s.members.count(*gf)) {
                rep.s2 = false;
                bad("S2", {g, f, *gf}, "composite escapes S");
            }
        }

    rep.right_s3 = true;
    rep.left_s3 = true;
    for (const Id& sm : s.members) {
        if (!c.has_morphism(sm))
            continue;
        for (const Morphism& f : c.morphisms) {
            b.tick();
            if (f.src == c.src(sm) && !complete_square_right(c, s.members, sm, f.id)) {
                rep.right_s3 = false;
                bad("right-S3", {sm, f.id}, "span has no S-cospan completion");
            }
            if (f.tgt == c.tgt(sm) && !complete_square_left(c, s.members, sm, f.id)) {
                rep.left_s3 = false;
                bad("left-S3", {sm, f.id}, "cospan has no S-span completion");
            }
        }
    }

    rep.right_s4 = true;
    rep.left_s4 = true;
    for (const Morphism& f : c.morphisms)
        for (const Morphism& g : c.morphisms) {
            if (f.id >= g.id || f.src != g.src || f.tgt != g.tgt)
                continue;
            b.tick();
            bool pre = false;   // (i): some s in S with f∘s = g∘s
            for (const Morphism& w : c.morphisms)
                if (w.tgt == f.src && s.members.count(w.id) &&
                    c.comp(f.id, w.id) == c.comp(g.id, w.id)) {
                    pre = true;
                    break;
                }
            bool post = false;  // (ii): some t in S with t∘f = t∘g
            for (const Morphism& t : c.morphisms)
                if (t.src == f.tgt && s.members.count(t.id) &&
                    c.comp(t.id, f.id) == c.comp(t.id, g.id)) {
                    post = true;
                    break;
                }
            if (pre && !post) {
                rep.right_s4 = false;
                bad("right-S4", {f.id, g.id}, "(i) holds but (ii) fails");
            }
            if (post && !pre) {
                rep.left_s4 = false;
                bad("left-S4", {f.id, g.id}, "(ii) holds but (i) fails");
            }
        }

    rep.right_quasi_saturated = true;
    rep.left_quasi_saturated = true;
    for (const Morphism& g : c.morphisms)
        for (const Morphism& f : c.morphisms) {
            auto gf = c.try_compose(g.id, f.id);
            if (!gf || !s.members.count(*gf))
                continue;
            b.tick();
            if (s.members.count(f.id) && !s.members.count(g.id)) {
                rep.right_quasi_saturated = false;
                bad("right-quasi-saturation", {g.id, f.id, *gf}, "gf,f in S but g not");
            }
            if (s.members.count(g.id) && !s.members.count(f.id)) {
                rep.left_quasi_saturated = false;
                bad("left-quasi-saturation", {g.id, f.id, *gf}, "gf,g in S but f not");
            }
        }
    return rep;
}

// A morphism of C_S, canonical representative of its colimit class.
// Right side: (t: Y -> Y' in S, g: X -> Y'). Left side: (t: X' -> X in S,
// g: X' -> Y). Bilateral: t encodes the pair "<s|t>" of the product index.
struct Fraction {
    Id t;
    Id g;

    bool operator<(const Fraction& o) const { return t != o.t ? t < o.t : g < o.g; }
    bool operator==(const Fraction& o) const { return t == o.t && g == o.g; }
    std::string str() const { return cat_str("(", t, ",", g, ")"); }
};

struct LocalizedHom {
    Formula formula;
    SetDiagram diagram;
    ColimitResult colimit;
    std::vector<Fraction> fractions;  // canonical representatives, sorted

    Fraction canonical(const Fraction& rep) const {
        auto it = colimit.cocone.find({rep.t, rep.g});
        if (it == colimit.cocone.end())
            throw Error(ErrorCode::InternalInconsistency, "not a fraction of this Hom set",
                        {rep.t, rep.g});
        return {it->second.at, it->second.token};
    }
};

namespace detail {
inline void require_formula(const MorphismClass& s, Formula f, const SystemReport* pre) {
    SystemReport local;
    const SystemReport& rep = pre ? *pre : (local = validate_mult_system(s));
    if (!rep.supports(f))
        throw Error(ErrorCode::FormulaUnsupported,
                    "the morphism class does not satisfy the axioms of the requested formula");
}
}  // namespace detail

// Hom_{C_S}(x, y) by the chosen colimit formula.
inline LocalizedHom localized_hom(const MorphismClass& s, const Id& x, const Id& y, Formula formula,
                                  Budget* budget = nullptr, const SystemReport* pre = nullptr) {
    detail::require_formula(s, formula, pre);
    const CatPtr& c = s.category;
    LocalizedHom out;
    out.formula = formula;
    SetDiagram d;
    if (formula == Formula::Right) {
        SliceResult ys = coslice_category(c, s.members, y, SliceSide::Under);
        d.index = ys.cat;
        for (const Id& t : ys.cat->objects)
            d.sets[t] = c->hom(x, ys.projection.on_obj(t));
        for (const Morphism& m : ys.cat->morphisms) {
            const Id& u = ys.projection.on_mor(m.id);
            auto& fn = d.maps[m.id];
            for (const Id& g : d.sets[m.src])
                fn[g] = c->comp(u, g);
        }
    } else if (formula == Formula::Left) {
        SliceResult sx = coslice_category(c, s.members, x, SliceSide::Over);
        // Hom_C(-, y) is contravariant, so the inductive index is (S/X)^op.
        d.index = opposite(sx.cat);
        for (const Id& t : sx.cat->objects)
            d.sets[t] = c->hom(sx.projection.on_obj(t), y);
        for (const Morphism& m : d.index->morphisms) {
            const Id& u = sx.projection.on_mor(m.id);
            auto& fn = d.maps[m.id];
            for (const Id& g : d.sets[m.src])
                fn[g] = c->comp(g, u);
        }
    } else {
        SliceResult sx = coslice_category(c, s.members, x, SliceSide::Over);
        SliceResult ys = coslice_category(c, s.members, y, SliceSide::Under);
        CatPtr prod = product_category(opposite(sx.cat), ys.cat);
        d.index = prod;
        auto split = [](const Id& pid) {
            // "<a|b>"
            auto bar = pid.find('|');
            return std::pair<Id, Id>(pid.substr(1, bar - 1), pid.substr(bar + 1, pid.size() - bar - 2));
        };
        for (const Id& ob : prod->objects) {
            auto [a, t] = split(ob);
            d.sets[ob] = c->hom(sx.projection.on_obj(a), ys.projection.on_obj(t));
        }
        for (const Morphism& m : prod->morphisms) {
            auto [am, tm] = split(m.id);
            const Id& pre_u = sx.projection.on_mor(am);
            const Id& post_u = ys.projection.on_mor(tm);
            auto& fn = d.maps[m.id];
            for (const Id& g : d.sets[m.src])
                fn[g] = c->comp(post_u, c->comp(g, pre_u));
        }
    }
    out.diagram = d;
    out.colimit = set_colimit(d, budget);
    for (const ColimElement& e : out.colimit.elements)
        out.fractions.push_back({e.at, e.token});
    return out;
}

struct LocalizedCategory {
    CatPtr cat;
    FunctorData q;  // from the source category
    Formula formula = Formula::Right;
    MorphismClass system;
    std::map<Id, Fraction> fraction_of;  // localized morphism id -> representative
    std::map<Id, Id> source_of, target_of;
    // morphisms outside S that Q nevertheless inverts (quasi-saturated but not
    // saturated-closed systems are flagged, not rejected)
    std::vector<Id> saturation_gap;

    Id frac_id(const Id& x, const Id& y, const Fraction& f) const {
        return cat_str("q[", x, ">", y, ";", f.t, ";", f.g, "]");
    }
};

// The localized category C_S with Hom sets from localized_hom and
// composition by (S3) square completion.
inline LocalizedCategory materialize_localization(const MorphismClass& s,
                                                  TieBreak tie = TieBreak::Lex,
                                                  Budget* budget = nullptr,
                                                  std::size_t hom_bound = 10000) {
    SystemReport rep = validate_mult_system(s, budget);
    Formula formula;
    if (rep.supports(Formula::Right))
        formula = Formula::Right;
    else if (rep.supports(Formula::Left))
        formula = Formula::Left;
    else
        throw Error(ErrorCode::FormulaUnsupported,
                    "class is neither a right nor a left quasi-saturated system");

    const CatPtr& c = s.category;
    LocalizedCategory out;
    out.formula = formula;
    out.system = s;

    std::map<std::pair<Id, Id>, LocalizedHom> homs;
    for (const Id& x : c->objects)
        for (const Id& y : c->objects) {
            homs.emplace(std::make_pair(x, y), localized_hom(s, x, y, formula, budget, &rep));
            if (homs.at({x, y}).fractions.size() > hom_bound)
                throw Error(ErrorCode::BoundExceeded,
                            cat_str("localized Hom set exceeds bound at (", x, ",", y, ")"));
        }

    FiniteCategory k;
    k.objects = c->objects;
    for (const auto& [xy, lh] : homs)
        for (const Fraction& f : lh.fractions) {
            Id mid = out.frac_id(xy.first, xy.second, f);
            k.morphisms.push_back({mid, xy.first, xy.second});
            out.fraction_of[mid] = f;
            out.source_of[mid] = xy.first;
            out.target_of[mid] = xy.second;
        }

    auto canon_id = [&](const Id& x, const Id& y, const Fraction& f) {
        return out.frac_id(x, y, homs.at({x, y}).canonical(f));
    };

    for (const Id& x : c->objects) {
        Fraction idf{c->id_of(x), c->id_of(x)};
        k.identity[x] = canon_id(x, x, idf);
    }

    // Composition of canonical fractions. Right side: p = (tp, gp): X -> Y,
    // q = (tq, gq): Y -> Z; complete the span (tp in S, gq) out of Y and glue.
    auto compose_right = [&](const Id& x, const Id& y, const Id& z, const Fraction& p,
                             const Fraction& q, TieBreak tb) {
        auto sq = complete_square_right(*c, s.members, p.t, q.g, tb);
        if (!sq)
            throw Error(ErrorCode::AxiomFailure, "(S3) completion not found during composition",
                        {p.t, q.g});
        Fraction comp{c->comp(sq->t, q.t), c->comp(sq->through, p.g)};
        return canon_id(x, z, comp);
    };
    auto compose_left = [&](const Id& x, const Id& y, const Id& z, const Fraction& p,
                            const Fraction& q, TieBreak tb) {
        // p = (tp: X' -> X in S, gp: X' -> Y), q = (tq: Y' -> Y in S, gq: Y' -> Z)
        auto sq = complete_square_left(*c, s.members, q.t, p.g, tb);
        if (!sq)
            throw Error(ErrorCode::AxiomFailure, "(S3) completion not found during composition",
                        {q.t, p.g});
        Fraction comp{c->comp(p.t, sq->t), c->comp(q.g, sq->through)};
        return canon_id(x, z, comp);
    };

    for (const auto& [mid1, p] : out.fraction_of)
        for (const auto& [mid2, q] : out.fraction_of) {
            if (out.target_of.at(mid1) != out.source_of.at(mid2))
                continue;
            const Id& x = out.source_of.at(mid1);
            const Id& y = out.target_of.at(mid1);
            const Id& z = out.target_of.at(mid2);
            Id r = formula == Formula::Right ? compose_right(x, y, z, p, q, tie)
                                             : compose_left(x, y, z, p, q, tie);
            Id r2 = formula == Formula::Right
                        ? compose_right(x, y, z, p, q,
                                        tie == TieBreak::Lex ? TieBreak::RevLex : TieBreak::Lex)
                        : compose_left(x, y, z, p, q,
                                       tie == TieBreak::Lex ? TieBreak::RevLex : TieBreak::Lex);
            if (r != r2)
                throw Error(ErrorCode::InternalInconsistency,
                            "composition depends on the (S3) completion choice", {mid2, mid1, r, r2});
            k.compose[{mid2, mid1}] = r;
        }

    out.cat = make_cat(std::move(k));

    FunctorData q;
    q.source = c;
    q.target = out.cat;
    for (const Id& x : c->objects)
        q.object_map[x] = x;
    for (const Morphism& m : c->morphisms) {
        Fraction f = formula == Formula::Right ? Fraction{c->id_of(m.tgt), m.id}
                                               : Fraction{c->id_of(m.src), m.id};
        q.morphism_map[m.id] = canon_id(m.src, m.tgt, f);
    }
    out.q = std::move(q);

    ValidationReport vr = validate_structure(*out.cat, {out.q});
    if (!vr.valid())
        throw Error(ErrorCode::InternalInconsistency,
                    "materialized localization failed validate_structure",
                    {vr.violations.front().law});
    for (const Id& m : s.members)
        if (!out.cat->is_iso(out.q.on_mor(m)))
            throw Error(ErrorCode::InternalInconsistency, "Q does not invert a member of S", {m});
    for (const Morphism& m : c->morphisms)
        if (!s.members.count(m.id) && out.cat->is_iso(out.q.on_mor(m.id)))
            out.saturation_gap.push_back(m.id);
    return out;
}

struct CrossReport {
    struct PairEntry {
        Id x, y;
        std::size_t right_count = 0, left_count = 0, bilateral_count = 0;
        bool bijective = false;
    };
    std::vector<PairEntry> pairs;
    bool all_agree = true;
    std::vector<Violation> witnesses;
};

// Right, left and bilateral formulas compared over every object pair; the
// canonical comparison maps a one-sided fraction into the double-index class.
inline CrossReport cross_check_formulas(const MorphismClass& s, Budget* budget = nullptr) {
    SystemReport rep = validate_mult_system(s, budget);
    detail::require_formula(s, Formula::Bilateral, &rep);
    const CatPtr& c = s.category;
    CrossReport out;
    for (const Id& x : c->objects)
        for (const Id& y : c->objects) {
            LocalizedHom r = localized_hom(s, x, y, Formula::Right, budget, &rep);
            LocalizedHom l = localized_hom(s, x, y, Formula::Left, budget, &rep);
            LocalizedHom bi = localized_hom(s, x, y, Formula::Bilateral, budget, &rep);
            CrossReport::PairEntry e{x, y, r.fractions.size(), l.fractions.size(),
                                     bi.fractions.size(), false};
            auto pair_obj = [](const Id& a, const Id& t) { return cat_str("<", a, "|", t, ">"); };
            // right fraction (t, g) -> bilateral class at (id_x, t)
            std::set<Fraction> from_right, from_left;
            bool ok = true;
            for (const Fraction& f : r.fractions)
                from_right.insert(bi.canonical({pair_obj(c->id_of(x), f.t), f.g}));
            for (const Fraction& f : l.fractions)
                from_left.insert(bi.canonical({pair_obj(f.t, c->id_of(y)), f.g}));
            std::set<Fraction> all(bi.fractions.begin(), bi.fractions.end());
            ok = from_right.size() == r.fractions.size() &&
                 from_left.size() == l.fractions.size() && from_right == all && from_left == all;
            e.bijective = ok;
            if (!ok) {
                out.all_agree = false;
                out.witnesses.push_back({"cross-formula", {x, y}, "formulas disagree"});
            }
            out.pairs.push_back(e);
        }
    return out;
}

}  // namespace locfrac
