#pragma once

#include <algorithm>
#include <cassert>

#include "locfrac/core.hpp"

namespace locfrac {

struct Morphism {
    Id id;
    Id src;
    Id tgt;
};

// A finite category given by explicit tables. Objects and morphisms are
// identified by strings; every deterministic search breaks ties in
// lexicographic id order.
struct FiniteCategory {
    std::vector<Id> objects;                  // sorted
    std::vector<Morphism> morphisms;          // sorted by id
    std::map<Id, Id> identity;                // object -> identity morphism
    std::map<std::pair<Id, Id>, Id> compose;  // (g, f) -> g∘f

    bool has_object(const Id& x) const {
        return std::binary_search(objects.begin(), objects.end(), x);
    }

    const Morphism* find_morphism(const Id& m) const {
        auto it = std::lower_bound(morphisms.begin(), morphisms.end(), m,
                                   [](const Morphism& a, const Id& b) { return a.id < b; });
        if (it == morphisms.end() || it->id != m)
            return nullptr;
        return &*it;
    }

    bool has_morphism(const Id& m) const { return find_morphism(m) != nullptr; }

    const Id& src(const Id& m) const { return must_find(m).src; }
    const Id& tgt(const Id& m) const { return must_find(m).tgt; }

    const Morphism& must_find(const Id& m) const {
        const Morphism* p = find_morphism(m);
        if (!p)
            throw Error(ErrorCode::InternalInconsistency, "unknown morphism id " + m, {m});
        return *p;
    }

    const Id& id_of(const Id& x) const {
        auto it = identity.find(x);
        if (it == identity.end())
            throw Error(ErrorCode::InternalInconsistency, "object without identity " + x, {x});
        return it->second;
    }

    bool is_identity(const Id& m) const {
        const Morphism& mo = must_find(m);
        auto it = identity.find(mo.src);
        return it != identity.end() && it->second == m;
    }

    std::optional<Id> try_compose(const Id& g, const Id& f) const {
        auto it = compose.find({g, f});
        if (it == compose.end())
            return std::nullopt;
        return it->second;
    }

    Id comp(const Id& g, const Id& f) const {
        auto r = try_compose(g, f);
        if (!r)
            throw Error(ErrorCode::InternalInconsistency,
                        cat_str("missing composite (", g, ")∘(", f, ")"), {g, f});
        return *r;
    }

    std::vector<Id> hom(const Id& x, const Id& y) const {
        std::vector<Id> out;
        for (const Morphism& m : morphisms)
            if (m.src == x && m.tgt == y)
                out.push_back(m.id);
        return out;
    }

    std::vector<Id> from(const Id& x) const {
        std::vector<Id> out;
        for (const Morphism& m : morphisms)
            if (m.src == x)
                out.push_back(m.id);
        return out;
    }

    std::vector<Id> into(const Id& y) const {
        std::vector<Id> out;
        for (const Morphism& m : morphisms)
            if (m.tgt == y)
                out.push_back(m.id);
        return out;
    }

    // Two-sided inverse search; lexicographically least when several exist.
    std::optional<Id> inverse(const Id& m) const {
        const Morphism& mo = must_find(m);
        for (const Id& w : hom(mo.tgt, mo.src)) {
            auto a = try_compose(w, m);
            auto b = try_compose(m, w);
            if (a && *a == id_of(mo.src) && b && *b == id_of(mo.tgt))
                return w;
        }
        return std::nullopt;
    }

    bool is_iso(const Id& m) const { return inverse(m).has_value(); }

    void sort_tables() {
        std::sort(objects.begin(), objects.end());
        std::sort(morphisms.begin(), morphisms.end(),
                  [](const Morphism& a, const Morphism& b) { return a.id < b.id; });
    }
};

using CatPtr = std::shared_ptr<const FiniteCategory>;

inline CatPtr make_cat(FiniteCategory c) {
    c.sort_tables();
    return std::make_shared<const FiniteCategory>(std::move(c));
}

inline CatPtr opposite(const CatPtr& c) {
    FiniteCategory o;
    o.objects = c->objects;
    for (const Morphism& m : c->morphisms)
        o.morphisms.push_back({m.id, m.tgt, m.src});
    o.identity = c->identity;
    for (const auto& [gf, h] : c->compose)
        o.compose[{gf.second, gf.first}] = h;
    return make_cat(std::move(o));
}

inline bool same_tables(const FiniteCategory& a, const FiniteCategory& b) {
    if (a.objects != b.objects || a.identity != b.identity || a.compose != b.compose)
        return false;
    if (a.morphisms.size() != b.morphisms.size())
        return false;
    for (std::size_t i = 0; i < a.morphisms.size(); ++i) {
        const Morphism &x = a.morphisms[i], &y = b.morphisms[i];
        if (x.id != y.id || x.src != y.src || x.tgt != y.tgt)
            return false;
    }
    return true;
}

struct FunctorData {
    CatPtr source;
    CatPtr target;
    std::map<Id, Id> object_map;
    std::map<Id, Id> morphism_map;

    const Id& on_obj(const Id& x) const {
        auto it = object_map.find(x);
        if (it == object_map.end())
            throw Error(ErrorCode::InternalInconsistency, "functor undefined on object " + x, {x});
        return it->second;
    }

    const Id& on_mor(const Id& m) const {
        auto it = morphism_map.find(m);
        if (it == morphism_map.end())
            throw Error(ErrorCode::InternalInconsistency, "functor undefined on morphism " + m, {m});
        return it->second;
    }
};

inline FunctorData identity_functor(const CatPtr& c) {
    FunctorData f;
    f.source = f.target = c;
    for (const Id& x : c->objects)
        f.object_map[x] = x;
    for (const Morphism& m : c->morphisms)
        f.morphism_map[m.id] = m.id;
    return f;
}

inline FunctorData compose_functors(const FunctorData& g, const FunctorData& f) {
    FunctorData h;
    h.source = f.source;
    h.target = g.target;
    for (const auto& [x, fx] : f.object_map)
        h.object_map[x] = g.on_obj(fx);
    for (const auto& [m, fm] : f.morphism_map)
        h.morphism_map[m] = g.on_mor(fm);
    return h;
}

struct DiagramData {
    CatPtr index;
    FunctorData body;  // body.source == index
};

struct Violation {
    std::string law;
    std::vector<Id> witnesses;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

// Full table scan of the category laws plus functoriality of the supplied
// functors. Malformed ids are reported as structural violations rather than
// thrown.
inline ValidationReport validate_structure(const FiniteCategory& c,
                                           const std::vector<FunctorData>& fs = {}) {
    ValidationReport rep;
    auto bad = [&](std::string law, std::vector<Id> w, std::string detail) {
        rep.violations.push_back({std::move(law), std::move(w), std::move(detail)});
    };

    std::set<Id> objs(c.objects.begin(), c.objects.end());
    std::set<Id> mors;
    for (const Morphism& m : c.morphisms) {
        if (!mors.insert(m.id).second)
            bad("structure/duplicate-morphism", {m.id}, "duplicate morphism id");
        if (!objs.count(m.src))
            bad("structure/dangling-source", {m.id, m.src}, "source is not an object");
        if (!objs.count(m.tgt))
            bad("structure/dangling-target", {m.id, m.tgt}, "target is not an object");
    }
    for (const Id& x : c.objects) {
        auto it = c.identity.find(x);
        if (it == c.identity.end()) {
            bad("structure/missing-identity", {x}, "object has no identity");
            continue;
        }
        const Morphism* m = c.find_morphism(it->second);
        if (!m || m->src != x || m->tgt != x)
            bad("structure/bad-identity", {x, it->second}, "identity not an endomorphism");
    }

    // Composition table totality and typing.
    for (const Morphism& g : c.morphisms)
        for (const Morphism& f : c.morphisms) {
            auto gf = c.try_compose(g.id, f.id);
            if (f.tgt == g.src) {
                if (!gf) {
                    bad("category/compose-missing", {g.id, f.id}, "composable pair without entry");
                } else {
                    const Morphism* h = c.find_morphism(*gf);
                    if (!h || h->src != f.src || h->tgt != g.tgt)
                        bad("category/compose-typing", {g.id, f.id, *gf}, "composite badly typed");
                }
            } else if (gf) {
                bad("category/compose-spurious", {g.id, f.id}, "entry for non-composable pair");
            }
        }

    // Identity and associativity laws.
    for (const Morphism& f : c.morphisms) {
        if (!objs.count(f.src) || !objs.count(f.tgt))
            continue;
        auto li = c.identity.find(f.tgt);
        auto ri = c.identity.find(f.src);
        if (li != c.identity.end()) {
            auto r = c.try_compose(li->second, f.id);
            if (!r || *r != f.id)
                bad("category/left-identity", {li->second, f.id}, "compose(id_tgt, f) != f");
        }
        if (ri != c.identity.end()) {
            auto r = c.try_compose(f.id, ri->second);
            if (!r || *r != f.id)
                bad("category/right-identity", {f.id, ri->second}, "compose(f, id_src) != f");
        }
    }
    for (const Morphism& h : c.morphisms)
        for (const Morphism& g : c.morphisms) {
            if (g.tgt != h.src)
                continue;
            for (const Morphism& f : c.morphisms) {
                if (f.tgt != g.src)
                    continue;
                auto gf = c.try_compose(g.id, f.id);
                auto hg = c.try_compose(h.id, g.id);
                if (!gf || !hg)
                    continue;
                auto a = c.try_compose(h.id, *gf);
                auto b = c.try_compose(*hg, f.id);
                if (!a || !b || *a != *b)
                    bad("category/associativity", {h.id, g.id, f.id}, "h(gf) != (hg)f");
            }
        }

    for (std::size_t i = 0; i < fs.size(); ++i) {
        const FunctorData& F = fs[i];
        std::string tag = cat_str("functor[", i, "]");
        const FiniteCategory& s = *F.source;
        const FiniteCategory& t = *F.target;
        for (const Id& x : s.objects) {
            auto it = F.object_map.find(x);
            if (it == F.object_map.end() || !t.has_object(it->second)) {
                bad(tag + "/object-map", {x}, "object map missing or dangling");
                continue;
            }
        }
        for (const Morphism& m : s.morphisms) {
            auto it = F.morphism_map.find(m.id);
            if (it == F.morphism_map.end() || !t.has_morphism(it->second)) {
                bad(tag + "/morphism-map", {m.id}, "morphism map missing or dangling");
                continue;
            }
            const Morphism& fm = t.must_find(it->second);
            if (fm.src != F.object_map.at(m.src) || fm.tgt != F.object_map.at(m.tgt))
                bad(tag + "/preserves-ends", {m.id, fm.id}, "source/target not preserved");
        }
        for (const Id& x : s.objects) {
            auto ix = s.identity.find(x);
            auto ox = F.object_map.find(x);
            if (ix == s.identity.end() || ox == F.object_map.end())
                continue;
            auto fm = F.morphism_map.find(ix->second);
            if (fm == F.morphism_map.end() || fm->second != t.id_of(ox->second))
                bad(tag + "/preserves-identity", {x}, "identity not preserved");
        }
        for (const Morphism& g : s.morphisms)
            for (const Morphism& f : s.morphisms) {
                auto gf = s.try_compose(g.id, f.id);
                if (!gf)
                    continue;
                auto Fg = F.morphism_map.find(g.id);
                auto Ff = F.morphism_map.find(f.id);
                auto Fgf = F.morphism_map.find(*gf);
                if (Fg == F.morphism_map.end() || Ff == F.morphism_map.end() ||
                    Fgf == F.morphism_map.end())
                    continue;
                auto r = t.try_compose(Fg->second, Ff->second);
                if (!r || *r != Fgf->second)
                    bad(tag + "/preserves-composition", {g.id, f.id}, "F(g)F(f) != F(gf)");
            }
    }
    return rep;
}

struct FilteredReport {
    bool nonempty = false;
    bool connected = false;
    bool pf1 = false;
    bool pf2 = false;
    bool cprime = false;
    bool filtrant = false;
    // the (C') reformulation: filtrant <=> nonempty && PF2 && C'
    bool cprime_equivalence_holds = false;
    std::vector<Violation> witnesses;
};

// PF1: every span j <- i -> j' closes to a commuting square.
// PF2: every parallel pair is equalized by a further morphism.
inline FilteredReport classify_filtered(const FiniteCategory& c, Budget* budget = nullptr) {
    Budget local;
    Budget& b = budget ? *budget : local;
    FilteredReport r;
    r.nonempty = !c.objects.empty();

    // Connectivity: zig-zag reachability.
    if (r.nonempty) {
        std::map<Id, std::size_t> idx;
        for (std::size_t i = 0; i < c.objects.size(); ++i)
            idx[c.objects[i]] = i;
        UnionFind uf(c.objects.size());
        for (const Morphism& m : c.morphisms)
            uf.unite(idx.at(m.src), idx.at(m.tgt));
        r.connected = true;
        for (std::size_t i = 1; i < c.objects.size(); ++i)
            if (uf.find(i) != uf.find(0)) {
                r.connected = false;
                r.witnesses.push_back({"connected", {c.objects[0], c.objects[i]}, "no zig-zag"});
                break;
            }
    }

    r.pf1 = true;
    for (const Morphism& f : c.morphisms)
        for (const Morphism& g : c.morphisms) {
            if (f.src != g.src)
                continue;
            b.tick();
            bool found = false;
            for (const Morphism& u : c.morphisms) {
                if (u.src != f.tgt)
                    continue;
                for (const Morphism& v : c.morphisms) {
                    if (v.src != g.tgt || v.tgt != u.tgt)
                        continue;
                    b.tick();
                    if (c.comp(u.id, f.id) == c.comp(v.id, g.id)) {
                        found = true;
                        break;
                    }
                }
                if (found)
                    break;
            }
            if (!found) {
                r.pf1 = false;
                r.witnesses.push_back({"PF1", {f.id, g.id}, "span does not close"});
            }
        }

    r.pf2 = true;
    for (const Morphism& f : c.morphisms)
        for (const Morphism& g : c.morphisms) {
            if (f.id >= g.id || f.src != g.src || f.tgt != g.tgt)
                continue;
            b.tick();
            bool found = false;
            for (const Morphism& h : c.morphisms) {
                if (h.src != f.tgt)
                    continue;
                if (c.comp(h.id, f.id) == c.comp(h.id, g.id)) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                r.pf2 = false;
                r.witnesses.push_back({"PF2", {f.id, g.id}, "parallel pair not equalized"});
            }
        }

    r.cprime = true;
    for (const Id& i : c.objects)
        for (const Id& j : c.objects) {
            b.tick();
            bool found = false;
            for (const Id& k : c.objects)
                if (!c.hom(i, k).empty() && !c.hom(j, k).empty()) {
                    found = true;
                    break;
                }
            if (!found) {
                r.cprime = false;
                r.witnesses.push_back({"C'", {i, j}, "no common target"});
            }
        }

    r.filtrant = r.nonempty && r.connected && r.pf1 && r.pf2;
    r.cprime_equivalence_holds = (r.filtrant == (r.nonempty && r.pf2 && r.cprime));
    return r;
}

enum class SliceSide { Under, Over };  // Under = X/S, Over = S/X

struct SliceResult {
    CatPtr cat;
    FunctorData projection;  // into the ambient category
};

// X/S: objects are the S-arrows with source x; morphisms are commuting
// triangles. With SliceSide::Over builds S/X instead. Synthesized ids are
// "[s;f]" where s is the source object and f the underlying arrow.
inline SliceResult coslice_category(const CatPtr& c, const std::set<Id>& s_members, const Id& x,
                                    SliceSide side = SliceSide::Under) {
    if (!c->has_object(x))
        throw Error(ErrorCode::InternalInconsistency, "coslice base is not an object", {x});
    FiniteCategory k;
    std::vector<Id> objs;
    for (const Morphism& m : c->morphisms) {
        bool in = side == SliceSide::Under ? (m.src == x) : (m.tgt == x);
        if (in && s_members.count(m.id))
            objs.push_back(m.id);
    }
    k.objects = objs;

    auto tri_id = [](const Id& s, const Id& f) { return cat_str("[", s, ";", f, "]"); };

    FunctorData proj;
    std::map<Id, Id> tri_src, tri_tgt, tri_under;
    for (const Id& s1 : objs)
        for (const Id& s2 : objs) {
            const Morphism& m1 = c->must_find(s1);
            const Morphism& m2 = c->must_find(s2);
            Id d1 = side == SliceSide::Under ? m1.tgt : m1.src;
            Id d2 = side == SliceSide::Under ? m2.tgt : m2.src;
            for (const Id& f : c->hom(d1, d2)) {
                bool commutes = side == SliceSide::Under ? (c->comp(f, s1) == s2)
                                                         : (c->comp(s2, f) == s1);
                if (!commutes)
                    continue;
                Id mid = tri_id(s1, f);
                k.morphisms.push_back({mid, s1, s2});
                tri_src[mid] = s1;
                tri_tgt[mid] = s2;
                tri_under[mid] = f;
            }
        }
    for (const Id& s : objs) {
        const Morphism& m = c->must_find(s);
        Id d = side == SliceSide::Under ? m.tgt : m.src;
        k.identity[s] = tri_id(s, c->id_of(d));
    }
    for (const auto& [gid, gu] : tri_under)
        for (const auto& [fid, fu] : tri_under) {
            if (tri_tgt.at(fid) != tri_src.at(gid))
                continue;
            k.compose[{gid, fid}] = tri_id(tri_src.at(fid), c->comp(gu, fu));
        }

    SliceResult out;
    out.cat = make_cat(std::move(k));
    proj.source = out.cat;
    proj.target = c;
    for (const Id& s : objs) {
        const Morphism& m = c->must_find(s);
        proj.object_map[s] = side == SliceSide::Under ? m.tgt : m.src;
    }
    for (const auto& [mid, f] : tri_under)
        proj.morphism_map[mid] = f;
    out.projection = std::move(proj);
    return out;
}

// --- Set-valued diagrams, colimits and limits -------------------------------

struct SetDiagram {
    CatPtr index;
    std::map<Id, std::vector<std::string>> sets;              // object -> tokens
    std::map<Id, std::map<std::string, std::string>> maps;    // morphism -> function

    ValidationReport validate() const {
        ValidationReport rep;
        auto bad = [&](std::string law, std::vector<Id> w, std::string d) {
            rep.violations.push_back({std::move(law), std::move(w), std::move(d)});
        };
        for (const Morphism& m : index->morphisms) {
            auto it = maps.find(m.id);
            if (it == maps.end()) {
                bad("setdiagram/missing-map", {m.id}, "no function for morphism");
                continue;
            }
            const auto& src = sets.at(m.src);
            const auto& tgt = sets.at(m.tgt);
            for (const std::string& t : src) {
                auto jt = it->second.find(t);
                if (jt == it->second.end())
                    bad("setdiagram/partial", {m.id, t}, "function undefined on token");
                else if (std::find(tgt.begin(), tgt.end(), jt->second) == tgt.end())
                    bad("setdiagram/dangling", {m.id, t}, "image token not in target set");
            }
        }
        for (const auto& [gf, h] : index->compose) {
            auto g = maps.find(gf.first), f = maps.find(gf.second), c = maps.find(h);
            if (g == maps.end() || f == maps.end() || c == maps.end())
                continue;
            for (const std::string& t : sets.at(index->src(gf.second))) {
                auto ft = f->second.find(t);
                if (ft == f->second.end())
                    continue;
                auto gft = g->second.find(ft->second);
                auto ct = c->second.find(t);
                if (gft == g->second.end() || ct == c->second.end() || gft->second != ct->second)
                    rep.violations.push_back({"setdiagram/functorial",
                                              {gf.first, gf.second, t},
                                              "map(g)∘map(f) != map(gf)"});
            }
        }
        return rep;
    }
};

// An element of a colimit, canonicalized as the lexicographically least
// (object, token) pair of its union-find class.
struct ColimElement {
    Id at;
    std::string token;

    bool operator<(const ColimElement& o) const {
        return at != o.at ? at < o.at : token < o.token;
    }
    bool operator==(const ColimElement& o) const { return at == o.at && token == o.token; }
    std::string str() const { return at + ":" + token; }
};

struct ColimitResult {
    std::vector<ColimElement> elements;                 // canonical, sorted
    std::map<ColimElement, ColimElement> cocone;        // (object, token) -> canonical
};

struct LimitResult {
    std::vector<Id> object_order;                       // sorted index objects
    std::vector<std::vector<std::string>> families;     // one token per object
};

inline ColimitResult set_colimit(const SetDiagram& d, Budget* budget = nullptr) {
    Budget local;
    Budget& b = budget ? *budget : local;
    std::vector<ColimElement> all;
    for (const Id& x : d.index->objects) {
        auto it = d.sets.find(x);
        if (it == d.sets.end())
            continue;
        for (const std::string& t : it->second)
            all.push_back({x, t});
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::map<ColimElement, std::size_t> idx;
    for (std::size_t i = 0; i < all.size(); ++i)
        idx[all[i]] = i;
    UnionFind uf(all.size());
    for (const Morphism& m : d.index->morphisms) {
        auto it = d.maps.find(m.id);
        if (it == d.maps.end())
            continue;
        for (const auto& [t, u] : it->second) {
            b.tick();
            auto a = idx.find({m.src, t});
            auto bb = idx.find({m.tgt, u});
            if (a != idx.end() && bb != idx.end())
                uf.unite(a->second, bb->second);
        }
    }
    std::map<std::size_t, ColimElement> least;
    for (std::size_t i = 0; i < all.size(); ++i) {
        std::size_t r = uf.find(i);
        auto it = least.find(r);
        if (it == least.end() || all[i] < it->second)
            least[r] = all[i];  // all[] sorted, so first hit is least, but keep the min explicit
    }
    ColimitResult out;
    std::set<ColimElement> emitted;
    for (std::size_t i = 0; i < all.size(); ++i) {
        ColimElement canon = least.at(uf.find(i));
        out.cocone[all[i]] = canon;
        if (emitted.insert(canon).second)
            out.elements.push_back(canon);
    }
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

inline LimitResult set_limit(const SetDiagram& d, Budget* budget = nullptr) {
    Budget local;
    Budget& b = budget ? *budget : local;
    LimitResult out;
    out.object_order = d.index->objects;
    std::vector<std::vector<std::string>> partial{{}};
    for (const Id& x : out.object_order) {
        const auto& sx = d.sets.at(x);
        std::vector<std::vector<std::string>> next;
        for (const auto& fam : partial)
            for (const std::string& t : sx) {
                b.tick();
                auto f2 = fam;
                f2.push_back(t);
                next.push_back(std::move(f2));
            }
        partial = std::move(next);
    }
    std::map<Id, std::size_t> pos;
    for (std::size_t i = 0; i < out.object_order.size(); ++i)
        pos[out.object_order[i]] = i;
    for (const auto& fam : partial) {
        bool ok = true;
        for (const Morphism& m : d.index->morphisms) {
            b.tick();
            const auto& f = d.maps.at(m.id);
            auto it = f.find(fam[pos.at(m.src)]);
            if (it == f.end() || it->second != fam[pos.at(m.tgt)]) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.families.push_back(fam);
    }
    return out;
}

struct ColimitLimitResult {
    std::optional<ColimitResult> colimit;
    std::optional<LimitResult> limit;
};

enum class DiagramMode { Colimit, Limit };

inline ColimitLimitResult set_colimit_limit(const SetDiagram& d, DiagramMode mode,
                                            Budget* budget = nullptr) {
    ColimitLimitResult r;
    if (mode == DiagramMode::Colimit)
        r.colimit = set_colimit(d, budget);
    else
        r.limit = set_limit(d, budget);
    return r;
}

// Product category, first factor optionally reversed. Used by the bilateral
// localization formula. Ids are "<a|b>".
inline CatPtr product_category(const CatPtr& a, const CatPtr& b) {
    FiniteCategory p;
    auto oid = [](const Id& x, const Id& y) { return cat_str("<", x, "|", y, ">"); };
    for (const Id& x : a->objects)
        for (const Id& y : b->objects)
            p.objects.push_back(oid(x, y));
    for (const Morphism& m : a->morphisms)
        for (const Morphism& n : b->morphisms)
            p.morphisms.push_back({oid(m.id, n.id), oid(m.src, n.src), oid(m.tgt, n.tgt)});
    for (const Id& x : a->objects)
        for (const Id& y : b->objects)
            p.identity[oid(x, y)] = oid(a->id_of(x), b->id_of(y));
    for (const auto& [gf, h] : a->compose)
        for (const auto& [gf2, h2] : b->compose)
            p.compose[{oid(gf.first, gf2.first), oid(gf.second, gf2.second)}] = oid(h, h2);
    return make_cat(std::move(p));
}

// Finite cofinality test: every comma category (b ↓ P) is nonempty and
// connected.
inline bool is_cofinal(const FunctorData& p, Budget* budget = nullptr) {
    Budget local;
    Budget& bud = budget ? *budget : local;
    const FiniteCategory& A = *p.source;
    const FiniteCategory& B = *p.target;
    for (const Id& b : B.objects) {
        // objects of (b ↓ P): pairs (a, u: b -> P(a))
        std::vector<std::pair<Id, Id>> objs;
        for (const Id& a : A.objects)
            for (const Id& u : B.hom(b, p.on_obj(a)))
                objs.push_back({a, u});
        if (objs.empty())
            return false;
        std::map<std::pair<Id, Id>, std::size_t> idx;
        for (std::size_t i = 0; i < objs.size(); ++i)
            idx[objs[i]] = i;
        UnionFind uf(objs.size());
        for (const auto& [a1, u1] : objs)
            for (const Morphism& m : A.morphisms) {
                if (m.src != a1)
                    continue;
                bud.tick();
                Id u2 = B.comp(p.on_mor(m.id), u1);
                auto it = idx.find({m.tgt, u2});
                if (it != idx.end())
                    uf.unite(idx.at({a1, u1}), it->second);
            }
        for (std::size_t i = 1; i < objs.size(); ++i)
            if (uf.find(i) != uf.find(0))
                return false;
    }
    return true;
}

}  // namespace locfrac
