#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skein/colour.hpp"
#include "skein/common.hpp"

namespace skein {

// A strand endpoint: node 0 is the external disc, nodes 1..b the internal
// boxes; points are numbered 1..2c clockwise from the top-left corner
// (1..c across the top left-to-right, c+1..2c across the bottom
// right-to-left).  The star arc of every node lies between point 2c and
// point 1.
struct End {
  int node = 0;
  int point = 0;
  friend bool operator==(const End&, const End&) = default;
  friend auto operator<=>(const End&, const End&) = default;
};

struct Strand {
  End a, b;
  Strand() = default;
  Strand(End x, End y) {
    if (y < x) std::swap(x, y);
    a = x;
    b = y;
  }
  Strand(int na, int pa, int nb, int pb) : Strand(End{na, pa}, End{nb, pb}) {}
  friend bool operator==(const Strand&, const Strand&) = default;
  friend auto operator<=>(const Strand&, const Strand&) = default;
};

// A face reference used for embedding data.  For node >= 0 it names the face
// touching arc `arc` of that node (arc j sits between boundary points j and
// j+1; arc 0 is the star arc between point 2c and point 1).  For node == -c
// it names the inside of free loop c (arc must be 1).
struct Anchor {
  int node = 0;
  int arc = 0;
  friend bool operator==(const Anchor&, const Anchor&) = default;
  friend auto operator<=>(const Anchor&, const Anchor&) = default;
};

// Combinatorial shaded planar tangle up to isotopy fixing the boundary and
// the box labels.  Immutable after construction; every construction path
// validates the matching, the planarity of each connected component, the
// checkerboard shading and the embedding forest.
class PlanarTangle {
 public:
  struct Placement {
    Anchor parent;  // face of the enclosing structure this component floats in
    Anchor outer;   // corner on the own face that touches that region (boxes)
  };

  const Colour& external() const { return ext_; }
  const std::vector<Colour>& boxes() const { return boxes_; }
  const std::vector<Strand>& strands() const { return strands_; }
  int circle_count() const { return ncircles_; }
  const std::map<int, Placement>& placements() const { return placements_; }

  int num_nodes() const { return 1 + static_cast<int>(boxes_.size()); }
  Colour node_colour(int n) const {
    SKEIN_CHECK(n >= 0 && n < num_nodes());
    return n == 0 ? ext_ : boxes_[n - 1];
  }
  int node_points(int n) const { return node_colour(n).points(); }
  bool boxless() const { return boxes_.empty(); }
  bool bare_diagram() const { return boxes_.empty() && ncircles_ == 0; }

  // Component key of a node: 0 for the component holding the external disc,
  // otherwise the smallest box id in the component.
  int comp_of_node(int n) const {
    SKEIN_CHECK(n >= 0 && n < num_nodes());
    return node_comp_[n];
  }

  // (component key, local face id) at a corner.
  std::pair<int, int> face_at(const Anchor& a) const {
    if (a.node < 0) {
      SKEIN_CHECK_MSG(-a.node <= ncircles_ && a.arc == 1, "bad loop anchor");
      return {a.node, 1};
    }
    int comp = comp_of_node(a.node);
    const CompInfo& ci = comps_.at(comp);
    auto it = ci.corner_face.find({a.node, a.arc});
    SKEIN_CHECK_MSG(it != ci.corner_face.end(),
                    "no arc " << a.arc << " on node " << a.node);
    return {comp, it->second};
  }

  bool face_white(int comp_key, int face) const {
    const CompInfo& ci = comps_.at(comp_key);
    SKEIN_CHECK(face >= 0 && face < static_cast<int>(ci.face_white.size()));
    return ci.face_white[face];
  }
  int face_count(int comp_key) const { return comps_.at(comp_key).nfaces; }

  void validate() const;  // re-runs all structural checks

  // Canonical code: two tangles get equal strings exactly when they are
  // isotopic as shaded tangles respecting box labels.
  const std::string& canonical_form() const {
    if (canon_.empty()) canon_ = compute_canonical();
    return canon_;
  }

  friend bool operator==(const PlanarTangle& x, const PlanarTangle& y) {
    return x.canonical_form() == y.canonical_form();
  }

  static PlanarTangle compose(const PlanarTangle& host,
                              const std::map<int, PlanarTangle>& slots);

  PlanarTangle adjoint() const;

  bool has_removable_loop() const { return innermost_loop().has_value(); }
  PlanarTangle remove_contractible_loop() const;
  int removable_loop_total() const;

  static PlanarTangle from_raw(Colour ext, std::vector<Colour> boxes,
                               std::vector<Strand> strands, int ncircles,
                               std::map<int, Placement> placements) {
    PlanarTangle t;
    t.ext_ = ext;
    t.boxes_ = std::move(boxes);
    t.strands_ = std::move(strands);
    t.ncircles_ = ncircles;
    t.placements_ = std::move(placements);
    std::sort(t.strands_.begin(), t.strands_.end());
    t.compute_structure();
    t.check_placements();
    return t;
  }

 private:
  PlanarTangle() = default;

  struct CompInfo {
    std::vector<int> nodes;  // sorted; empty for free loops
    int nstrands = 0;
    int nfaces = 0;
    std::map<std::pair<int, int>, int> corner_face;  // (node, arc) -> face
    std::vector<bool> face_white;
    std::map<int, std::pair<int, int>> strand_faces;  // strand idx -> sides
  };

  // Rotation conventions: on a box the counterclockwise point order in the
  // plane is 1, 2c, 2c-1, ..., 2; on the external boundary it is 1, 2, ...,
  // 2c.  A face walk arriving at point p crosses the corner named here.
  int sigma(int node, int p) const {
    int P = node_points(node);
    if (node == 0) return p % P + 1;
    return p == 1 ? P : p - 1;
  }
  int arrival_arc(int node, int p) const {
    if (node == 0) return p % node_points(node);
    return p - 1;
  }

  void compute_structure();
  void check_placements() const;
  std::string compute_canonical() const;

  std::optional<int> innermost_loop() const {
    std::set<int> with_children;
    for (const auto& [key, pl] : placements_)
      if (pl.parent.node < 0) with_children.insert(-pl.parent.node);
    for (int c = 1; c <= ncircles_; ++c)
      if (!with_children.count(c)) return c;
    return std::nullopt;
  }

  Colour ext_ = Colour::zero_plus();
  std::vector<Colour> boxes_;
  std::vector<Strand> strands_;
  int ncircles_ = 0;
  std::map<int, Placement> placements_;

  std::vector<int> node_comp_;
  std::map<int, CompInfo> comps_;
  mutable std::string canon_;
};

inline void PlanarTangle::compute_structure() {
  canon_.clear();
  SKEIN_CHECK_MSG(num_nodes() >= 1, "no nodes");
  std::map<End, int> end_at;
  for (std::size_t s = 0; s < strands_.size(); ++s) {
    for (End e : {strands_[s].a, strands_[s].b}) {
      SKEIN_CHECK_MSG(e.node >= 0 && e.node < num_nodes(),
                      "strand endpoint on missing node " << e.node);
      int P = node_points(e.node);
      SKEIN_CHECK_MSG(e.point >= 1 && e.point <= P,
                      "point " << e.point << " out of range on node "
                               << e.node);
      SKEIN_CHECK_MSG(!end_at.count(e), "point used twice: node "
                                            << e.node << " point " << e.point);
      end_at[e] = static_cast<int>(s);
    }
    SKEIN_CHECK_MSG(!(strands_[s].a == strands_[s].b),
                    "strand glued to itself");
  }
  long total_points = 0;
  for (int n = 0; n < num_nodes(); ++n) total_points += node_points(n);
  SKEIN_CHECK_MSG(static_cast<long>(2 * strands_.size()) == total_points,
                  "not a perfect matching of marked points");

  // components of the node/strand graph
  std::vector<int> parent(num_nodes());
  for (int i = 0; i < num_nodes(); ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Strand& s : strands_) parent[find(s.a.node)] = find(s.b.node);
  node_comp_.assign(num_nodes(), 0);
  std::map<int, std::vector<int>> groups;
  for (int n = 0; n < num_nodes(); ++n) groups[find(n)].push_back(n);
  comps_.clear();
  for (auto& [root, nodes] : groups) {
    std::sort(nodes.begin(), nodes.end());
    int key = nodes.front();  // 0 exactly when the external disc is in here
    for (int n : nodes) node_comp_[n] = key;
    CompInfo ci;
    ci.nodes = nodes;
    comps_[key] = std::move(ci);
  }
  for (int c = 1; c <= ncircles_; ++c) {
    CompInfo ci;
    ci.nfaces = 2;                   // 0 = outside, 1 = inside
    ci.face_white = {false, false};  // fixed up by check_placements
    comps_[-c] = std::move(ci);
  }

  // faces of each node-bearing component, by tracing corner walks
  std::map<End, int> dart_face;
  for (auto& [key, ci] : comps_) {
    if (key < 0) continue;
    std::vector<End> darts;
    for (int n : ci.nodes)
      for (int p = 1; p <= node_points(n); ++p) darts.push_back({n, p});
    ci.nstrands = static_cast<int>(darts.size()) / 2;
    if (darts.empty()) {
      int n0 = ci.nodes.front();
      ci.nfaces = 1;
      ci.corner_face[{n0, 0}] = 0;
      ci.face_white = {node_colour(n0).star_face_white()};
      continue;
    }
    int nfaces = 0;
    for (const End& d0 : darts) {
      if (dart_face.count(d0)) continue;
      int fid = nfaces++;
      End d = d0;
      while (!dart_face.count(d)) {
        dart_face[d] = fid;
        const Strand& s = strands_[end_at.at(d)];
        End e = (s.a == d) ? s.b : s.a;  // arrival endpoint
        auto corner = std::make_pair(e.node, arrival_arc(e.node, e.point));
        SKEIN_CHECK_MSG(!ci.corner_face.count(corner),
                        "corner traced twice; invalid embedding");
        ci.corner_face[corner] = fid;
        d = End{e.node, sigma(e.node, e.point)};
      }
    }
    ci.nfaces = nfaces;
    int expect = 2 - static_cast<int>(ci.nodes.size()) + ci.nstrands;
    SKEIN_CHECK_MSG(
        nfaces == expect,
        "strand data is not planar: component with "
            << ci.nodes.size() << " nodes and " << ci.nstrands
            << " strands traced " << nfaces << " faces, wanted " << expect);
    // checkerboard shading read off corner arc parity (star arcs are white
    // on every numbered node)
    ci.face_white.assign(nfaces, false);
    std::vector<bool> done(nfaces, false);
    for (const auto& [corner, fid] : ci.corner_face) {
      bool white = corner.second % 2 == 0;
      if (!done[fid]) {
        done[fid] = true;
        ci.face_white[fid] = white;
      } else {
        SKEIN_CHECK_MSG(ci.face_white[fid] == white,
                        "inconsistent shading at node " << corner.first
                                                        << " arc "
                                                        << corner.second);
      }
    }
    for (bool dn : done) SKEIN_CHECK(dn);
  }
  for (std::size_t s = 0; s < strands_.size(); ++s) {
    int key = node_comp_[strands_[s].a.node];
    CompInfo& ci = comps_[key];
    int f1 = dart_face.at(strands_[s].a);
    int f2 = dart_face.at(strands_[s].b);
    ci.strand_faces[static_cast<int>(s)] = {f1, f2};
    SKEIN_CHECK_MSG(ci.face_white[f1] != ci.face_white[f2],
                    "strand bounds equal shades on both sides");
  }
}

inline void PlanarTangle::check_placements() const {
  auto& self = const_cast<PlanarTangle&>(*this);
  for (auto& [key, ci] : comps_) {
    if (key == 0) {
      SKEIN_CHECK_MSG(!placements_.count(0), "root component has a placement");
      continue;
    }
    SKEIN_CHECK_MSG(placements_.count(key),
                    "floating component " << key << " has no placement");
  }
  for (auto& [key, pl] : placements_)
    SKEIN_CHECK_MSG(comps_.count(key) && key != 0,
                    "placement for missing component " << key);
  std::map<int, int> parent_comp;
  for (auto& [key, pl] : placements_) {
    auto [pcomp, pface] = face_at(pl.parent);
    SKEIN_CHECK_MSG(pcomp != key, "component placed inside itself");
    parent_comp[key] = pcomp;
    if (key > 0)
      SKEIN_CHECK_MSG(pl.outer.node > 0 && comp_of_node(pl.outer.node) == key,
                      "outer anchor not on its own component");
  }
  for (auto& [key, pc] : parent_comp) {
    int cur = pc;
    int guard = 0;
    while (cur != 0) {
      auto it = parent_comp.find(cur);
      SKEIN_CHECK_MSG(it != parent_comp.end(), "orphan component chain");
      cur = it->second;
      SKEIN_CHECK_MSG(++guard <= static_cast<int>(comps_.size()),
                      "cycle in the embedding forest");
    }
  }
  // walk the forest top-down: fix loop shades, check shade agreement
  std::set<int> done = {0};
  bool progress = true;
  while (progress && done.size() < comps_.size()) {
    progress = false;
    for (auto& [key, pc] : parent_comp) {
      if (done.count(key) || !done.count(pc)) continue;
      done.insert(key);
      progress = true;
      const Placement& pl = placements_.at(key);
      auto [pcomp, pface] = face_at(pl.parent);
      bool parent_white = comps_.at(pcomp).face_white[pface];
      if (key < 0) {
        self.comps_[key].face_white = {parent_white, !parent_white};
        continue;
      }
      auto [ocomp, oface] = face_at(pl.outer);
      SKEIN_CHECK(ocomp == key);
      SKEIN_CHECK_MSG(comps_.at(key).face_white[oface] == parent_white,
                      "component floats in a face of the wrong shade");
    }
  }
  SKEIN_CHECK(done.size() == comps_.size());
}

inline void PlanarTangle::validate() const {
  PlanarTangle copy = *this;
  copy.compute_structure();
  copy.check_placements();
}

// ---------------------------------------------------------------------------
// canonical code

inline std::string PlanarTangle::compute_canonical() const {
  // Global face classes: each floating component's outer face (for loops,
  // their outside) is the same region of the plane as the parent face it
  // floats in.
  std::map<std::pair<int, int>, int> fidx;
  std::vector<int> uf;
  auto fid = [&](std::pair<int, int> f) {
    auto it = fidx.find(f);
    if (it != fidx.end()) return it->second;
    int id = static_cast<int>(uf.size());
    fidx[f] = id;
    uf.push_back(id);
    return id;
  };
  std::function<int(int)> findc = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (const auto& [key, ci] : comps_)
    for (int f = 0; f < ci.nfaces; ++f) fid({key, f});
  for (const auto& [key, pl] : placements_) {
    auto pf = face_at(pl.parent);
    auto of = key > 0 ? face_at(pl.outer) : std::make_pair(key, 0);
    uf[findc(fid(pf))] = findc(fid(of));
  }
  auto cls_of = [&](int comp, int face) { return findc(fid({comp, face})); };

  for (const auto& [key, ci] : comps_) {
    std::set<int> seen;
    for (int f = 0; f < ci.nfaces; ++f) {
      int c = cls_of(key, f);
      SKEIN_CHECK_MSG(!seen.count(c), "two faces of one component coincide");
      seen.insert(c);
    }
  }

  std::map<int, std::vector<int>> attached;  // class -> comps outer-facing it
  std::map<int, int> outer_face_of;
  for (const auto& [key, pl] : placements_) {
    if (key > 0) {
      auto of = face_at(pl.outer);
      outer_face_of[key] = of.second;
      attached[cls_of(of.first, of.second)].push_back(key);
    } else {
      outer_face_of[key] = 0;
      attached[cls_of(key, 0)].push_back(key);
    }
  }

  std::function<std::string(int, int)> comp_code = [&](int key, int arrived) {
    auto region = [&](int cls) {
      std::string r = "[";
      std::vector<int> bkids;
      std::vector<std::string> lkids;
      auto it = attached.find(cls);
      if (it != attached.end()) {
        for (int k : it->second) {
          if (k == key) continue;
          if (k > 0)
            bkids.push_back(k);
          else
            lkids.push_back(comp_code(k, cls));
        }
      }
      std::sort(bkids.begin(), bkids.end());
      for (int k : bkids)
        r += "b" + std::to_string(k) + "@" +
             std::to_string(outer_face_of.at(k)) + comp_code(k, cls);
      std::sort(lkids.begin(), lkids.end());
      for (auto& s : lkids) r += s;
      r += "]";
      return r;
    };
    if (key < 0) return "o" + region(cls_of(key, 1));
    const CompInfo& ci = comps_.at(key);
    std::string out = "(";
    for (int f = 0; f < ci.nfaces; ++f) {
      int cls = cls_of(key, f);
      out += (cls == arrived) ? "[*]" : region(cls);
    }
    out += ")";
    return out;
  };

  std::string out = "P" + ext_.str() + "|B";
  for (std::size_t i = 0; i < boxes_.size(); ++i) {
    if (i) out += ",";
    out += boxes_[i].str();
  }
  out += "|S";
  for (const Strand& s : strands_)
    out += std::to_string(s.a.node) + "." + std::to_string(s.a.point) + "-" +
           std::to_string(s.b.node) + "." + std::to_string(s.b.point) + ";";
  out += "|E" + comp_code(0, -1);
  return out;
}

// ---------------------------------------------------------------------------

inline PlanarTangle PlanarTangle::remove_contractible_loop() const {
  auto pick = innermost_loop();
  SKEIN_CHECK_MSG(pick.has_value(), "no removable free loop");
  int cid = *pick;
  auto shift = [&](Anchor a) {
    if (a.node < 0 && -a.node > cid) a.node += 1;
    return a;
  };
  std::map<int, Placement> pl;
  for (const auto& [key, p] : placements_) {
    if (key == -cid) continue;
    int nk = (key < 0 && -key > cid) ? key + 1 : key;
    pl[nk] = Placement{shift(p.parent), shift(p.outer)};
  }
  return from_raw(ext_, boxes_, strands_, ncircles_ - 1, std::move(pl));
}

inline int PlanarTangle::removable_loop_total() const {
  PlanarTangle t = *this;
  int n = 0;
  while (t.has_removable_loop()) {
    t = t.remove_contractible_loop();
    ++n;
  }
  return n;
}

inline PlanarTangle PlanarTangle::adjoint() const {
  // reflect: point p -> 2c+1-p on every node; arc j -> (2c-j) mod 2c
  auto mp = [&](End e) {
    return End{e.node, node_points(e.node) + 1 - e.point};
  };
  auto ma = [&](Anchor a) {
    if (a.node < 0) return a;
    int P = node_points(a.node);
    if (P == 0 || a.arc == 0) return a;
    return Anchor{a.node, P - a.arc};
  };
  std::vector<Strand> st;
  for (const Strand& s : strands_) st.emplace_back(mp(s.a), mp(s.b));
  std::map<int, Placement> pl;
  for (const auto& [key, p] : placements_)
    pl[key] = Placement{ma(p.parent), ma(p.outer)};
  return from_raw(ext_, boxes_, st, ncircles_, std::move(pl));
}

// ---------------------------------------------------------------------------
// composition by gluing tangles into boxes (any subset of the boxes at once)

inline PlanarTangle PlanarTangle::compose(
    const PlanarTangle& host, const std::map<int, PlanarTangle>& slots) {
  int b = static_cast<int>(host.boxes_.size());
  for (const auto& [i, s] : slots) {
    SKEIN_CHECK_MSG(i >= 1 && i <= b, "no box " << i << " to fill");
    SKEIN_CHECK_MSG(s.external() == host.boxes_[i - 1],
                    "slot " << i << " needs colour "
                            << host.boxes_[i - 1].str() << ", got "
                            << s.external().str());
  }

  // new box numbering: splice each filled slot's boxes in place
  std::vector<Colour> nboxes;
  std::map<int, int> hostmap;
  std::map<int, std::vector<int>> submap;
  for (int i = 1; i <= b; ++i) {
    auto it = slots.find(i);
    if (it == slots.end()) {
      nboxes.push_back(host.boxes_[i - 1]);
      hostmap[i] = static_cast<int>(nboxes.size());
    } else {
      auto& v = submap[i];
      for (const Colour& c : it->second.boxes_) {
        nboxes.push_back(c);
        v.push_back(static_cast<int>(nboxes.size()));
      }
    }
  }

  // fuse strands across the glued boundaries
  struct TEnd {
    bool scar = false;
    int a = 0, b = 0;  // real: (new node, point); scar: (slot, point)
    bool operator==(const TEnd&) const = default;
    auto operator<=>(const TEnd&) const = default;
  };
  struct Edge {
    TEnd x, y;
    int owner;  // -1 host, else slot id
    int sidx;
  };
  std::vector<Edge> edges;
  auto trans_host = [&](End e) -> TEnd {
    if (e.node == 0) return {false, 0, e.point};
    if (slots.count(e.node)) return {true, e.node, e.point};
    return {false, hostmap.at(e.node), e.point};
  };
  for (std::size_t s = 0; s < host.strands_.size(); ++s)
    edges.push_back({trans_host(host.strands_[s].a),
                     trans_host(host.strands_[s].b), -1,
                     static_cast<int>(s)});
  for (const auto& [i, sub] : slots) {
    auto trans_sub = [&, slot = i](End e) -> TEnd {
      if (e.node == 0) return {true, slot, e.point};
      return {false, submap.at(slot)[e.node - 1], e.point};
    };
    for (std::size_t s = 0; s < sub.strands_.size(); ++s)
      edges.push_back({trans_sub(sub.strands_[s].a),
                       trans_sub(sub.strands_[s].b), i, static_cast<int>(s)});
  }
  std::map<TEnd, std::vector<int>> at_scar;
  for (std::size_t e = 0; e < edges.size(); ++e)
    for (const TEnd* t : {&edges[e].x, &edges[e].y})
      if (t->scar) at_scar[*t].push_back(static_cast<int>(e));
  for (auto& [t, v] : at_scar)
    SKEIN_CHECK_MSG(v.size() == 2, "scar point not doubly covered");
  auto other_edge_at = [&](const TEnd& t, int e) {
    const auto& v = at_scar.at(t);
    return v[0] == e ? v[1] : v[0];
  };

  std::vector<Strand> nstrands;
  std::vector<bool> used(edges.size(), false);
  for (std::size_t e0 = 0; e0 < edges.size(); ++e0) {
    if (used[e0]) continue;
    const TEnd* start = nullptr;
    if (!edges[e0].x.scar)
      start = &edges[e0].x;
    else if (!edges[e0].y.scar)
      start = &edges[e0].y;
    if (!start) continue;
    int e = static_cast<int>(e0);
    TEnd cur = *start;
    while (true) {
      used[e] = true;
      TEnd nxt = (edges[e].x == cur) ? edges[e].y : edges[e].x;
      if (!nxt.scar) {
        nstrands.push_back(Strand{End{start->a, start->b}, End{nxt.a, nxt.b}});
        break;
      }
      e = other_edge_at(nxt, e);
      cur = nxt;
    }
  }
  struct NewLoop {
    int owner, sidx;
  };
  std::vector<NewLoop> scar_loops;  // origin edge of each purely glued cycle
  for (std::size_t e0 = 0; e0 < edges.size(); ++e0) {
    if (used[e0]) continue;
    scar_loops.push_back({edges[e0].owner, edges[e0].sidx});
    int e = static_cast<int>(e0);
    TEnd cur = edges[e0].x;
    while (!used[e]) {
      used[e] = true;
      TEnd nxt = (edges[e].x == cur) ? edges[e].y : edges[e].x;
      e = other_edge_at(nxt, e);
      cur = nxt;
    }
  }

  // free loop numbering: host loops, slot loops in slot order, glued cycles
  int nc = 0;
  std::map<int, int> host_loop;
  std::map<std::pair<int, int>, int> sub_loop;
  for (int c = 1; c <= host.ncircles_; ++c) host_loop[c] = ++nc;
  for (const auto& [i, sub] : slots)
    for (int c = 1; c <= sub.ncircles_; ++c) sub_loop[{i, c}] = ++nc;
  std::vector<int> scar_loop_ids;
  for (std::size_t j = 0; j < scar_loops.size(); ++j)
    scar_loop_ids.push_back(++nc);

  // structural pass over the composite (placements attached afterwards)
  PlanarTangle mid;
  mid.ext_ = host.ext_;
  mid.boxes_ = nboxes;
  mid.strands_ = nstrands;
  std::sort(mid.strands_.begin(), mid.strands_.end());
  mid.ncircles_ = 0;
  mid.compute_structure();

  // old face classes across the gluing
  struct OldFace {
    int owner, comp, face;
    auto operator<=>(const OldFace&) const = default;
  };
  std::map<OldFace, int> fidx;
  std::vector<int> uf;
  auto fid = [&](OldFace f) {
    auto it = fidx.find(f);
    if (it != fidx.end()) return it->second;
    int id = static_cast<int>(uf.size());
    fidx[f] = id;
    uf.push_back(id);
    return id;
  };
  std::function<int(int)> findc = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  auto unite = [&](OldFace a, OldFace b) { uf[findc(fid(a))] = findc(fid(b)); };
  auto add_tangle_faces = [&](const PlanarTangle& t, int owner) {
    for (const auto& [key, ci] : t.comps_)
      for (int f = 0; f < ci.nfaces; ++f) fid({owner, key, f});
    for (const auto& [key, pl] : t.placements_) {
      auto pf = t.face_at(pl.parent);
      auto of = key > 0 ? t.face_at(pl.outer) : std::make_pair(key, 0);
      unite({owner, pf.first, pf.second}, {owner, of.first, of.second});
    }
  };
  add_tangle_faces(host, -1);
  for (const auto& [i, sub] : slots) add_tangle_faces(sub, i);
  for (const auto& [i, sub] : slots) {
    int P = host.boxes_[i - 1].points();
    int arcs = P == 0 ? 1 : P;
    for (int arc = 0; arc < arcs; ++arc) {
      auto hf = host.face_at(Anchor{i, arc});
      auto sf = sub.face_at(Anchor{0, arc});
      unite({-1, hf.first, hf.second}, {i, sf.first, sf.second});
    }
  }

  // map old classes to the composite's local faces
  std::map<int, std::pair<int, int>> origin;  // new node -> (owner, old node)
  origin[0] = {-1, 0};
  for (auto& [h, n] : hostmap) origin[n] = {-1, h};
  for (auto& [i, v] : submap)
    for (std::size_t k = 0; k < v.size(); ++k)
      origin[v[k]] = {i, static_cast<int>(k + 1)};

  std::map<std::pair<int, int>, int> newface_class;
  for (const auto& [key, ci] : mid.comps_) {
    for (const auto& [corner, f] : ci.corner_face) {
      auto [owner, onode] = origin.at(corner.first);
      const PlanarTangle& src = owner < 0 ? host : slots.at(owner);
      auto of = src.face_at(Anchor{onode, corner.second});
      int cls = findc(fid({owner, of.first, of.second}));
      auto nf = std::make_pair(key, f);
      auto it = newface_class.find(nf);
      if (it == newface_class.end())
        newface_class[nf] = cls;
      else
        SKEIN_CHECK_MSG(it->second == cls,
                        "face correspondence inconsistent in composition");
    }
  }
  {
    std::map<int, std::set<int>> comp_classes;
    for (const auto& [nf, cls] : newface_class) {
      SKEIN_CHECK_MSG(!comp_classes[nf.first].count(cls),
                      "two faces of one component merged; not a tangle");
      comp_classes[nf.first].insert(cls);
    }
  }
  std::map<int, std::pair<int, int>> loop_sides;  // new loop -> side classes
  for (auto& [c, ncid] : host_loop) {
    auto pf = host.face_at(host.placements_.at(-c).parent);
    loop_sides[ncid] = {findc(fid({-1, pf.first, pf.second})),
                        findc(fid({-1, -c, 1}))};
  }
  for (auto& [ic, ncid] : sub_loop) {
    const PlanarTangle& sub = slots.at(ic.first);
    auto pf = sub.face_at(sub.placements_.at(-ic.second).parent);
    loop_sides[ncid] = {findc(fid({ic.first, pf.first, pf.second})),
                        findc(fid({ic.first, -ic.second, 1}))};
  }
  for (std::size_t j = 0; j < scar_loops.size(); ++j) {
    int owner = scar_loops[j].owner;
    int sidx = scar_loops[j].sidx;
    const PlanarTangle& src = owner < 0 ? host : slots.at(owner);
    int key = src.node_comp_[src.strands_[sidx].a.node];
    auto [f1, f2] = src.comps_.at(key).strand_faces.at(sidx);
    loop_sides[scar_loop_ids[j]] = {findc(fid({owner, key, f1})),
                                    findc(fid({owner, key, f2}))};
  }

  // rebuild the embedding forest breadth-first from the root component
  auto canonical_corner = [&](int comp, int face) -> Anchor {
    const CompInfo& ci = mid.comps_.at(comp);
    for (const auto& [corner, f] : ci.corner_face)
      if (f == face) return Anchor{corner.first, corner.second};
    SKEIN_CHECK_MSG(false, "face without corners");
    return {};
  };
  std::set<int> seen_classes;
  for (const auto& [nf, cls] : newface_class)
    if (nf.first == 0) seen_classes.insert(cls);
  std::map<int, Placement> npl;
  std::map<int, int> pending_cls;  // placed component -> parent class
  std::set<int> placed = {0};
  std::size_t total = mid.comps_.size() + loop_sides.size();
  while (placed.size() < total) {
    bool progress = false;
    for (const auto& [key, ci] : mid.comps_) {
      if (key <= 0 || placed.count(key)) continue;
      std::optional<std::pair<int, int>> outer;  // (face, class)
      for (int f = 0; f < ci.nfaces; ++f) {
        int cls = newface_class.at({key, f});
        if (seen_classes.count(cls)) {
          SKEIN_CHECK_MSG(!outer.has_value(),
                          "component reachable through two faces");
          outer = {f, cls};
        }
      }
      if (!outer) continue;
      progress = true;
      placed.insert(key);
      for (int f = 0; f < ci.nfaces; ++f)
        if (f != outer->first) seen_classes.insert(newface_class.at({key, f}));
      npl[key] = Placement{Anchor{}, canonical_corner(key, outer->first)};
      pending_cls[key] = outer->second;
    }
    for (auto& [ncid, sides] : loop_sides) {
      int k = -ncid;
      if (placed.count(k)) continue;
      bool sa = seen_classes.count(sides.first) > 0;
      bool sb = seen_classes.count(sides.second) > 0;
      if (!sa && !sb) continue;
      SKEIN_CHECK_MSG(!(sa && sb), "free loop with both sides visible");
      progress = true;
      placed.insert(k);
      int outer_cls = sa ? sides.first : sides.second;
      int inner_cls = sa ? sides.second : sides.first;
      seen_classes.insert(inner_cls);
      npl[k] = Placement{};
      pending_cls[k] = outer_cls;
    }
    SKEIN_CHECK_MSG(progress, "embedding forest is not connected to the root");
  }
  // resolve parent classes to concrete anchors: smallest node corner in the
  // class; a cornerless region is the inside of some free loop
  std::map<int, Anchor> class_anchor;
  for (const auto& [nf, cls] : newface_class) {
    Anchor a = canonical_corner(nf.first, nf.second);
    auto it = class_anchor.find(cls);
    if (it == class_anchor.end() || a < it->second) class_anchor[cls] = a;
  }
  std::map<int, int> class_loop_inner;
  for (auto& [ncid, sides] : loop_sides) {
    int outer_cls = pending_cls.at(-ncid);
    int inner_cls = sides.first == outer_cls ? sides.second : sides.first;
    class_loop_inner[inner_cls] = ncid;
  }
  for (auto& [key, pl] : npl) {
    int cls = pending_cls.at(key);
    auto it = class_anchor.find(cls);
    if (it != class_anchor.end()) {
      pl.parent = it->second;
    } else {
      auto lt = class_loop_inner.find(cls);
      SKEIN_CHECK_MSG(lt != class_loop_inner.end(),
                      "cannot anchor a face with no boundary");
      pl.parent = Anchor{-lt->second, 1};
    }
  }

  return from_raw(host.ext_, nboxes, mid.strands_, nc, std::move(npl));
}

// ---------------------------------------------------------------------------
// incremental construction

class TangleBuilder {
 public:
  explicit TangleBuilder(Colour external) : ext_(external) {}

  int add_box(Colour c) {
    boxes_.push_back(c);
    return static_cast<int>(boxes_.size());
  }

  TangleBuilder& strand(End a, End b) {
    strands_.emplace_back(a, b);
    return *this;
  }
  TangleBuilder& strand(int na, int pa, int nb, int pb) {
    return strand(End{na, pa}, End{nb, pb});
  }

  int circle(Anchor at) {
    ++ncircles_;
    placements_[-ncircles_] = PlanarTangle::Placement{at, Anchor{}};
    return ncircles_;
  }

  TangleBuilder& place_component(int box_id, Anchor parent, Anchor outer) {
    pending_.push_back({box_id, parent, outer});
    return *this;
  }

  PlanarTangle build() {
    std::vector<int> parent(boxes_.size() + 1);
    for (std::size_t i = 0; i < parent.size(); ++i)
      parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Strand& s : strands_) parent[find(s.a.node)] = find(s.b.node);
    for (const auto& pp : pending_) {
      SKEIN_CHECK_MSG(pp.box >= 1 && pp.box <= static_cast<int>(boxes_.size()),
                      "place_component: no box " << pp.box);
      int root = find(pp.box);
      SKEIN_CHECK_MSG(find(0) != root,
                      "placed component contains the external disc");
      int key = pp.box;
      for (int n = 1; n <= static_cast<int>(boxes_.size()); ++n)
        if (find(n) == root) {
          key = n;
          break;
        }
      placements_[key] = PlanarTangle::Placement{pp.parent, pp.outer};
    }
    return PlanarTangle::from_raw(ext_, boxes_, strands_, ncircles_,
                                  placements_);
  }

 private:
  struct Pending {
    int box;
    Anchor parent, outer;
  };
  Colour ext_;
  std::vector<Colour> boxes_;
  std::vector<Strand> strands_;
  int ncircles_ = 0;
  std::map<int, PlanarTangle::Placement> placements_;
  std::vector<Pending> pending_;
};

}  // namespace skein
