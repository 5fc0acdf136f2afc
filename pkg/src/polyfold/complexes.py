"""Polygon-folding construction of Schützenberger complexes.

The complex of the identity R-class is approximated by attaching
relator-labeled polygons at unsaturated vertices in breadth-first
distance order and folding edges to determinism: two edges with the
same label and source fold their targets, two with the same label and
target fold their sources. For a sparse relator every face embeds,
existing cells never merge, and each attachment glues a single
connected boundary arc through the attachment vertex.

Vertices carry their exact distance from the base vertex and the face
that owns them (the face whose attachment created them; the base
vertex is owned by the BASE sentinel). Face boundaries are recorded
clockwise from the attachment vertex, so boundary index k carries
relator letter k from boundary[k] to boundary[k+1].
"""

import heapq
import json
from dataclasses import dataclass, field

from .errors import (
    AlreadySaturated,
    NotSparse,
    ResourceLimit,
    StructureViolation,
)
from .words import (
    coerce_word,
    inverse,
    is_sparse,
    letter_to_char,
    parse_word,
    word_to_str,
)

BASE = -1
DEFAULT_FACE_CAP = 10**6


class UnionFind:
    """Growable union-find; the caller chooses the surviving root."""

    __slots__ = ("parent",)

    def __init__(self):
        self.parent = []

    def add(self):
        p = len(self.parent)
        self.parent.append(p)
        return p

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union_into(self, loser, winner):
        self.parent[loser] = winner


class Vertex:
    __slots__ = ("dist", "owner", "sigma_of", "out")

    def __init__(self):
        self.dist = None
        self.owner = None
        self.sigma_of = None
        self.out = {}  # letter -> (target vid, edge id); resolve ids on read


@dataclass(slots=True)
class Face:
    id: int
    sigma: int
    boundary: list  # n vertex ids, clockwise, boundary[0] == sigma
    edge_ids: list  # n edge ids, edge k runs boundary[k] -> boundary[k+1]
    parent: int  # owner of sigma at attach time; BASE for the first face
    rho_hat: int  # first index after the glued arc, in [1, n]
    phi_hat: int  # last index of the glued arc's far end, in [0, n-1]
    order: int  # 1-based attachment order


@dataclass(slots=True)
class GammaArc:
    """The glued arc of a face: clockwise from rho through sigma to phi."""

    vertices: list
    rho: int
    phi: int
    length: int  # number of glued edges


@dataclass
class AuditReport:
    ok: bool = True
    failures: list = field(default_factory=list)
    checked: dict = field(default_factory=dict)

    def fail(self, message):
        self.ok = False
        self.failures.append(message)

    def merge(self, other):
        self.ok = self.ok and other.ok
        self.failures.extend(other.failures)
        for key, count in other.checked.items():
            self.checked[key] = self.checked.get(key, 0) + count
        return self

    def summary(self):
        if self.ok:
            parts = ", ".join(f"{k}={v}" for k, v in sorted(self.checked.items()))
            return f"pass ({parts})"
        return "fail:\n" + "\n".join(f"  {f}" for f in self.failures)


class Complex:
    """A finite approximation of the Schützenberger complex of 1."""

    def __init__(self, relator, face_cap=DEFAULT_FACE_CAP, fold_rng=None):
        word = coerce_word(relator)
        report = is_sparse(word)
        if not report:
            raise NotSparse(report)
        self.word = word
        self.n = len(word)
        self.face_cap = face_cap
        self.fold_rng = fold_rng
        self.saturated_radius = -1
        self.faces = []
        self._uf_v = UnionFind()
        self._uf_e = UnionFind()
        self._verts = []
        self._frontier = []  # heap of (dist, vid); stale entries skipped
        self._live_vertices = 0
        self._live_edges = 0
        self._import_defects = []
        self.v0 = self._new_vertex()
        base = self._verts[self.v0]
        base.dist = 0
        base.owner = BASE
        heapq.heappush(self._frontier, (0, self.v0))
        self.attach_face(self.v0)
        self.saturated_radius = 0

    @classmethod
    def _imported(cls, word, face_cap):
        obj = cls.__new__(cls)
        obj.word = word
        obj.n = len(word)
        obj.face_cap = face_cap
        obj.fold_rng = None
        obj.saturated_radius = -1
        obj.faces = []
        obj._uf_v = UnionFind()
        obj._uf_e = UnionFind()
        obj._verts = []
        obj._frontier = []
        obj._live_vertices = 0
        obj._live_edges = 0
        obj._import_defects = []
        obj.v0 = None
        return obj

    # -- basic accessors ------------------------------------------------

    @property
    def vertex_count(self):
        return self._live_vertices

    @property
    def edge_count(self):
        return self._live_edges

    @property
    def face_count(self):
        return len(self.faces)

    def find(self, vid):
        return self._uf_v.find(vid)

    def live_vertices(self):
        return [v for v in range(len(self._verts)) if self._uf_v.find(v) == v]

    def distance(self, vid):
        return self._verts[self._uf_v.find(vid)].dist

    def omega(self, vid):
        """The face owning the vertex; BASE for the base vertex."""
        return self._verts[self._uf_v.find(vid)].owner

    def sigma_face(self, vid):
        """The face attached at the vertex, or None."""
        return self._verts[self._uf_v.find(vid)].sigma_of

    def edges_at(self, vid):
        """Resolved adjacency at a vertex: letter -> (target, edge id)."""
        out = {}
        for x, (tgt, eid) in self._verts[self._uf_v.find(vid)].out.items():
            out[x] = (self._uf_v.find(tgt), self._uf_e.find(eid))
        return out

    def neighbor(self, vid, letter):
        hit = self._verts[self._uf_v.find(vid)].out.get(letter)
        if hit is None:
            return None
        return self._uf_v.find(hit[0])

    def gamma(self, fid):
        """The glued arc of a face, clockwise from rho through sigma to phi."""
        f = self.faces[fid]
        n = self.n
        idxs = list(range(f.rho_hat, n)) + list(range(0, f.phi_hat + 1))
        verts = [f.boundary[i] for i in idxs]
        return GammaArc(
            vertices=verts,
            rho=f.boundary[f.rho_hat % n],
            phi=f.boundary[f.phi_hat],
            length=n - f.rho_hat + f.phi_hat,
        )

    def boundary_index(self, fid, vid):
        """Index of a vertex on a face boundary, or None."""
        vid = self._uf_v.find(vid)
        f = self.faces[fid]
        try:
            return f.boundary.index(vid)
        except ValueError:
            return None

    # -- construction ----------------------------------------------------

    def _new_vertex(self):
        self._uf_v.add()
        self._verts.append(Vertex())
        self._live_vertices += 1
        return len(self._verts) - 1

    def _merge_edges(self, ea, eb, pos_of_new_eid, glued, first_new_e):
        ca = self._uf_e.find(ea)
        cb = self._uf_e.find(eb)
        if ca == cb:
            return
        a_new = ca >= first_new_e
        b_new = cb >= first_new_e
        if not a_new and not b_new:
            raise StructureViolation(
                f"folding identified two existing edges {ca} and {cb}"
            )
        if a_new and b_new:
            raise StructureViolation(
                f"polygon boundary folds onto itself at edges {ca} and {cb}"
            )
        new_root = ca if a_new else cb
        old_root = cb if a_new else ca
        self._uf_e.union_into(new_root, old_root)
        self._live_edges -= 1
        glued.add(pos_of_new_eid[new_root])

    def attach_face(self, at):
        """Attach a relator polygon at an unsaturated vertex and fold.

        Returns the new face id. Raises AlreadySaturated if the vertex
        already hosts a face, ResourceLimit at the face cap, and
        StructureViolation if folding tries to identify existing cells
        (impossible for sparse relators and sound data).
        """
        v = self._uf_v.find(at)
        vert = self._verts[v]
        if vert.sigma_of is not None:
            raise AlreadySaturated(
                f"vertex {v} already hosts face {vert.sigma_of}"
            )
        if len(self.faces) >= self.face_cap:
            raise ResourceLimit(f"face cap {self.face_cap} reached")
        n, w = self.n, self.word
        parent = vert.owner
        rng = self.fold_rng
        first_new_v = len(self._verts)
        first_new_e = len(self._uf_e.parent)
        poly = [v] + [self._new_vertex() for _ in range(n - 1)]
        eids = [self._uf_e.add() for _ in range(n)]
        self._live_edges += n
        pos_of_new_eid = {eid: k for k, eid in enumerate(eids)}
        glued = set()
        find = self._uf_v.find
        tasks = [("edge", k, 0) for k in range(n)]
        head = 0
        while head < len(tasks):
            if rng is not None and len(tasks) - head > 1:
                k = rng.randrange(head, len(tasks))
                tasks[head], tasks[k] = tasks[k], tasks[head]
            task = tasks[head]
            head += 1
            if task[0] == "edge":
                k = task[1]
                src = find(poly[k])
                dst = find(poly[(k + 1) % n])
                x = w[k]
                eid = eids[k]
                hit = self._verts[src].out.get(x)
                if hit is not None:
                    self._merge_edges(
                        hit[1], eid, pos_of_new_eid, glued, first_new_e
                    )
                    u = find(hit[0])
                    if u != dst:
                        tasks.append(("merge", u, dst))
                    continue
                hit = self._verts[dst].out.get(inverse(x))
                if hit is not None:
                    self._merge_edges(
                        hit[1], eid, pos_of_new_eid, glued, first_new_e
                    )
                    u = find(hit[0])
                    if u != src:
                        tasks.append(("merge", u, src))
                    continue
                self._verts[src].out[x] = (dst, eid)
                self._verts[dst].out[inverse(x)] = (src, eid)
            else:
                a = find(task[1])
                b = find(task[2])
                if a == b:
                    continue
                a_new = a >= first_new_v
                b_new = b >= first_new_v
                if not a_new and not b_new:
                    raise StructureViolation(
                        f"folding identified existing vertices {a} and {b}"
                    )
                if a_new and b_new:
                    raise StructureViolation(
                        f"polygon boundary does not embed: vertices {a}, {b}"
                    )
                winner, loser = (a, b) if a < b else (b, a)
                self._uf_v.union_into(loser, winner)
                self._live_vertices -= 1
                lose_out = self._verts[loser].out
                self._verts[loser].out = {}
                win_v = self._verts[winner]
                for x, (tgt, eid) in lose_out.items():
                    cur = win_v.out.get(x)
                    if cur is None:
                        win_v.out[x] = (tgt, eid)
                    else:
                        self._merge_edges(
                            cur[1], eid, pos_of_new_eid, glued, first_new_e
                        )
                        t1 = find(cur[0])
                        t2 = find(tgt)
                        if t1 != t2:
                            tasks.append(("merge", t1, t2))

        boundary = [find(p) for p in poly]
        edge_ids = [self._uf_e.find(e) for e in eids]
        if len(set(boundary)) != n:
            raise StructureViolation(
                f"face boundary revisits a vertex: {boundary}"
            )
        if glued:
            phi_hat = 0
            while phi_hat in glued:
                phi_hat += 1
            rho_hat = n
            while (rho_hat - 1) in glued:
                rho_hat -= 1
            if phi_hat >= rho_hat or glued != set(range(phi_hat)) | set(
                range(rho_hat, n)
            ):
                raise StructureViolation(
                    f"glued positions {sorted(glued)} not a contiguous arc "
                    f"through the attachment vertex"
                )
        else:
            phi_hat, rho_hat = 0, n

        fid = len(self.faces)
        d_phi = self._verts[boundary[phi_hat]].dist
        d_rho = self._verts[boundary[rho_hat % n]].dist
        if d_phi is None or d_rho is None:
            raise StructureViolation("glued arc endpoint lacks a distance")
        for idx in range(phi_hat + 1, rho_hat):
            b = boundary[idx]
            bv = self._verts[b]
            if bv.dist is not None:
                raise StructureViolation(
                    f"existing vertex {b} inside the owned arc of face {fid}"
                )
            bv.dist = min(d_phi + (idx - phi_hat), d_rho + (rho_hat - idx))
            bv.owner = fid
            heapq.heappush(self._frontier, (bv.dist, b))
        for idx in list(range(0, phi_hat + 1)) + list(range(rho_hat, n)):
            bv = self._verts[boundary[idx]]
            if bv.dist is None:
                raise StructureViolation(
                    f"new vertex {boundary[idx]} on the glued arc of face {fid}"
                )
            if bv.owner != parent:
                raise StructureViolation(
                    f"glued-arc vertex {boundary[idx]} of face {fid} owned by "
                    f"{bv.owner}, expected parent {parent}"
                )
        vert.sigma_of = fid
        self.faces.append(
            Face(fid, v, boundary, edge_ids, parent, rho_hat, phi_hat, fid + 1)
        )
        return fid

    def _frontier_pop_live(self, max_dist=None):
        """Pop the nearest unsaturated live vertex, or None."""
        while self._frontier:
            d, vid = self._frontier[0]
            if max_dist is not None and d > max_dist:
                return None
            heapq.heappop(self._frontier)
            if self._uf_v.find(vid) != vid:
                continue
            if self._verts[vid].sigma_of is not None:
                continue
            return vid
        return None

    def build_to_radius(self, radius):
        """Attach faces until every vertex within the radius is saturated."""
        while True:
            vid = self._frontier_pop_live(max_dist=radius)
            if vid is None:
                break
            self.attach_face(vid)
        self.saturated_radius = max(self.saturated_radius, radius)
        return self

    def build_to_faces(self, count):
        """Attach nearest-first until the complex has at least count faces."""
        while len(self.faces) < count:
            vid = self._frontier_pop_live()
            if vid is None:
                break
            self.attach_face(vid)
        if self._frontier:
            frontier_min = self._frontier[0][0]
            vid = self._frontier_pop_live()
            if vid is not None:
                frontier_min = self._verts[vid].dist
                heapq.heappush(self._frontier, (frontier_min, vid))
                self.saturated_radius = max(
                    self.saturated_radius, frontier_min - 1
                )
        return self

    # -- structural audits -------------------------------------------------

    def vertex_face_incidence(self):
        """Map vertex id -> sorted list of incident face ids."""
        inc = {}
        for f in self.faces:
            for b in f.boundary:
                inc.setdefault(b, []).append(f.id)
        return inc

    def verify_structure(self):
        """Check the structure theorems against raw adjacency.

        (1) each face boundary embeds and reads the relator;
        (2) pairwise face intersections are single arcs containing
            exactly one of the two attachment vertices;
        (3) triple intersections are a single vertex, the attachment
            vertex of one of the three;
        (4) no vertex lies on four faces;
        (5) parents precede children and host their attachment vertex.
        """
        report = AuditReport()
        for defect in self._import_defects:
            report.fail(f"import defect: {defect}")
        n, w = self.n, self.word
        for f in self.faces:
            if len(set(f.boundary)) != n:
                report.fail(f"face {f.id}: boundary revisits a vertex")
                continue
            if f.boundary[0] != self._uf_v.find(f.sigma):
                report.fail(f"face {f.id}: boundary[0] is not the base vertex")
            for k in range(n):
                src = f.boundary[k]
                dst = f.boundary[(k + 1) % n]
                hit = self.edges_at(src).get(w[k])
                if hit is None or hit[0] != dst:
                    report.fail(
                        f"face {f.id}: edge {k} ({letter_to_char(w[k])}) "
                        f"missing from {src} to {dst}"
                    )
                elif hit[1] != self._uf_e.find(f.edge_ids[k]):
                    report.fail(
                        f"face {f.id}: edge {k} resolves to edge {hit[1]}, "
                        f"recorded {f.edge_ids[k]}"
                    )
        report.checked["faces"] = len(self.faces)

        inc = self.vertex_face_incidence()
        pair_count = 0
        seen_pairs = set()
        for vid, fids in inc.items():
            if len(fids) >= 4:
                report.fail(
                    f"vertex {vid} lies on {len(fids)} faces: {fids[:5]}"
                )
            for ai in range(len(fids)):
                for bi in range(ai + 1, len(fids)):
                    pair = (fids[ai], fids[bi])
                    if pair not in seen_pairs:
                        seen_pairs.add(pair)
        for fa, fb in sorted(seen_pairs):
            pair_count += 1
            A, B = self.faces[fa], self.faces[fb]
            shared = set(A.boundary) & set(B.boundary)
            arc_a = _boundary_arc_indices(A.boundary, shared)
            arc_b = _boundary_arc_indices(B.boundary, shared)
            if arc_a is None or arc_b is None:
                report.fail(
                    f"faces {fa},{fb}: shared vertices {sorted(shared)} "
                    f"not a single boundary arc"
                )
                continue
            shared_edges = set(self._uf_e.find(e) for e in A.edge_ids) & set(
                self._uf_e.find(e) for e in B.edge_ids
            )
            arc_edges = _arc_edge_ids(self, A, arc_a)
            if shared_edges != arc_edges:
                report.fail(
                    f"faces {fa},{fb}: shared edges {sorted(shared_edges)} "
                    f"differ from arc edges {sorted(arc_edges)}"
                )
            sigmas_in = [
                s for s in (A.boundary[0], B.boundary[0]) if s in shared
            ]
            if len(sigmas_in) != 1:
                report.fail(
                    f"faces {fa},{fb}: intersection contains "
                    f"{len(sigmas_in)} attachment vertices, expected 1"
                )
        report.checked["face_pairs"] = pair_count

        triple_count = 0
        for vid, fids in inc.items():
            if len(fids) != 3:
                continue
            triple_count += 1
            common = (
                set(self.faces[fids[0]].boundary)
                & set(self.faces[fids[1]].boundary)
                & set(self.faces[fids[2]].boundary)
            )
            if common != {vid}:
                report.fail(
                    f"faces {fids}: triple intersection {sorted(common)} "
                    f"is not the single vertex {vid}"
                )
            if vid not in (self.faces[f].boundary[0] for f in fids):
                report.fail(
                    f"vertex {vid} on three faces {fids} is no attachment "
                    f"vertex of any of them"
                )
        report.checked["triples"] = triple_count

        for f in self.faces:
            if f.id == 0:
                if f.parent != BASE:
                    report.fail("first face has a non-base parent")
                continue
            if f.parent == BASE:
                report.fail(f"face {f.id} claims the base parent")
                continue
            if not (0 <= f.parent < len(self.faces)):
                report.fail(f"face {f.id}: parent {f.parent} unknown")
                continue
            P = self.faces[f.parent]
            if P.order >= f.order:
                report.fail(
                    f"face {f.id}: parent {f.parent} attached later"
                )
            if f.boundary[0] not in P.boundary:
                report.fail(
                    f"face {f.id}: attachment vertex not on parent boundary"
                )
        return report

    def audit_gamma(self):
        """Glued arcs: length bound and ownership (both sides)."""
        report = AuditReport()
        n = self.n
        for f in self.faces:
            glue_len = n - f.rho_hat + f.phi_hat
            if 2 * glue_len > n - 2:
                report.fail(
                    f"face {f.id}: glued arc length {glue_len} exceeds "
                    f"n/2 - 1 = {n / 2 - 1:g}"
                )
            for idx in list(range(0, f.phi_hat + 1)) + list(
                range(f.rho_hat, n)
            ):
                if self.omega(f.boundary[idx]) != f.parent:
                    report.fail(
                        f"face {f.id}: glued-arc vertex {f.boundary[idx]} "
                        f"owned by {self.omega(f.boundary[idx])}, expected "
                        f"{f.parent}"
                    )
            for idx in range(f.phi_hat + 1, f.rho_hat):
                if self.omega(f.boundary[idx]) != f.id:
                    report.fail(
                        f"face {f.id}: owned vertex {f.boundary[idx]} "
                        f"owned by {self.omega(f.boundary[idx])}"
                    )
        report.checked["faces"] = len(self.faces)
        return report

    def audit_distances(self):
        """Stored distances must equal breadth-first distances from v0."""
        report = AuditReport()
        dist = {self.v0: 0}
        queue = [self.v0]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for x in sorted(self._verts[v].out):
                tgt = self._uf_v.find(self._verts[v].out[x][0])
                if tgt not in dist:
                    dist[tgt] = dist[v] + 1
                    queue.append(tgt)
        live = self.live_vertices()
        if len(dist) != len(live):
            report.fail(
                f"breadth-first search reached {len(dist)} of "
                f"{len(live)} vertices"
            )
        for v in live:
            stored = self._verts[v].dist
            if stored != dist.get(v):
                report.fail(
                    f"vertex {v}: stored distance {stored}, "
                    f"breadth-first {dist.get(v)}"
                )
        report.checked["vertices"] = len(live)
        return report

    def audit_geodesics(self):
        """Breadth-first tree geodesics obey the owner-chain law.

        Along a geodesic from v0, consecutive owners are equal or
        parent to child; each edge lies on the boundary of the deeper
        owner; and a face is entered only at its rho or phi vertex.
        """
        report = AuditReport()
        parent_edge = {self.v0: None}
        queue = [self.v0]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for x in sorted(self._verts[v].out):
                tgt, eid = self._verts[v].out[x]
                tgt = self._uf_v.find(tgt)
                if tgt not in parent_edge:
                    parent_edge[tgt] = (v, x, self._uf_e.find(eid))
                    queue.append(tgt)
        checked = 0
        for v in queue:
            if parent_edge[v] is None:
                continue
            u, x, eid = parent_edge[v]
            if self._verts[v].dist != self._verts[u].dist + 1:
                continue  # not a geodesic edge; distances audited separately
            checked += 1
            ou, ov = self.omega(u), self.omega(v)
            if ou == ov:
                f = self.faces[ov]
                if eid not in {self._uf_e.find(e) for e in f.edge_ids}:
                    report.fail(
                        f"geodesic edge {u}->{v} not on owner face {ov}"
                    )
                continue
            if ov == BASE:
                report.fail(f"geodesic edge {u}->{v} descends to the base")
                continue
            f = self.faces[ov]
            if f.parent != ou:
                report.fail(
                    f"geodesic edge {u}->{v}: owners {ou}->{ov} are not "
                    f"parent and child"
                )
                continue
            if eid not in {self._uf_e.find(e) for e in f.edge_ids}:
                report.fail(
                    f"geodesic edge {u}->{v} not on entered face {ov}"
                )
            rho = f.boundary[f.rho_hat % self.n]
            phi = f.boundary[f.phi_hat]
            if u not in (rho, phi):
                report.fail(
                    f"geodesic enters face {ov} at {u}, neither rho {rho} "
                    f"nor phi {phi}"
                )
        report.checked["geodesic_edges"] = checked
        return report

    def dual_tree(self):
        """Parent links as a rooted tree; validates degrees and order."""
        children = {f.id: [] for f in self.faces}
        for f in self.faces:
            if f.id == 0:
                if f.parent != BASE:
                    raise StructureViolation("first face has a parent face")
                continue
            if not (0 <= f.parent < len(self.faces)):
                raise StructureViolation(
                    f"face {f.id}: unknown parent {f.parent}"
                )
            if self.faces[f.parent].order >= f.order:
                raise StructureViolation(
                    f"face {f.id}: parent {f.parent} does not precede it"
                )
            children[f.parent].append(f.id)
        for fid, kids in children.items():
            if len(kids) > self.n - 1:
                raise StructureViolation(
                    f"face {fid} has {len(kids)} children, limit {self.n - 1}"
                )
        return children

    def audit_dual_tree(self):
        """Degree bound plus the combinatorial edge characterization.

        The characterization ((A,B) is an edge iff the attachment
        vertex of B lies on A and every face containing it has its own
        attachment vertex on A) quantifies over all faces of the full
        complex, so it is only decided for faces whose attachment
        vertex lies at distance <= saturated_radius - n.
        """
        report = AuditReport()
        try:
            children = self.dual_tree()
        except StructureViolation as exc:
            report.fail(str(exc))
            return report
        report.checked["faces"] = len(self.faces)
        inc = self.vertex_face_incidence()
        horizon = self.saturated_radius - self.n
        checked = 0
        for f in self.faces:
            if f.id == 0:
                continue
            sigma = f.boundary[0]
            if self.distance(sigma) > horizon:
                continue
            checked += 1
            candidates = []
            for aid in inc[sigma]:
                if aid == f.id:
                    continue
                A = self.faces[aid]
                if all(
                    self.faces[cid].boundary[0] in A.boundary
                    for cid in inc[sigma]
                    if cid != aid
                ):
                    candidates.append(aid)
            if candidates != [f.parent]:
                report.fail(
                    f"face {f.id}: combinatorial parents {candidates}, "
                    f"recorded parent {f.parent}"
                )
        report.checked["characterized"] = checked
        return report

    def audit_all(self):
        report = self.verify_structure()
        report.merge(self.audit_gamma())
        report.merge(self.audit_distances())
        report.merge(self.audit_geodesics())
        report.merge(self.audit_dual_tree())
        return report

    # -- canonical form and serialization ---------------------------------

    def canonical_form(self):
        """Label-independent form: breadth-first relabeling from v0.

        Two complexes built with different fold orders are isomorphic
        as based labeled complexes exactly when their canonical forms
        are equal.
        """
        order = {self.v0: 0}
        queue = [self.v0]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for x in sorted(self._verts[v].out):
                tgt = self._uf_v.find(self._verts[v].out[x][0])
                if tgt not in order:
                    order[tgt] = len(order)
                    queue.append(tgt)
        edges = sorted(
            (order[v], x, order[self._uf_v.find(self._verts[v].out[x][0])])
            for v in queue
            for x in self._verts[v].out
            if x % 2 == 0
        )
        face_rank = {}
        faces_sorted = sorted(self.faces, key=lambda f: order[f.boundary[0]])
        for rank, f in enumerate(faces_sorted):
            face_rank[f.id] = rank
        faces = [
            (
                order[f.boundary[0]],
                [order[b] for b in f.boundary],
                f.rho_hat,
                f.phi_hat,
                -1 if f.parent == BASE else face_rank[f.parent],
            )
            for f in faces_sorted
        ]
        dists = [self._verts[v].dist for v in queue]
        return {
            "word": word_to_str(self.word),
            "vertices": len(order),
            "distances": dists,
            "edges": edges,
            "faces": faces,
        }

    def to_json_dict(self):
        verts = [
            {"id": v, "dist": self._verts[v].dist, "owner": self._verts[v].owner}
            for v in self.live_vertices()
        ]
        edges = []
        for v in self.live_vertices():
            for x, (tgt, eid) in sorted(self._verts[v].out.items()):
                if x % 2 == 0:
                    edges.append(
                        {
                            "src": v,
                            "letter": letter_to_char(x),
                            "dst": self._uf_v.find(tgt),
                        }
                    )
        faces = [
            {
                "id": f.id,
                "parent": f.parent,
                "boundary": list(f.boundary),
                "rho_hat": f.rho_hat,
                "phi_hat": f.phi_hat,
                "order": f.order,
            }
            for f in self.faces
        ]
        return {
            "format": "schutzenberger-complex",
            "word": word_to_str(self.word),
            "n": self.n,
            "base": self.v0,
            "saturated_radius": self.saturated_radius,
            "vertices": verts,
            "edges": edges,
            "faces": faces,
        }

    def to_json(self, indent=None):
        return json.dumps(self.to_json_dict(), indent=indent, sort_keys=False)

    def to_dot(self):
        """Graphviz form: vertices labeled id:distance, v0 highlighted."""
        lines = ["digraph complex {", "  rankdir=LR;", "  node [shape=circle];"]
        lines.append(
            f'  v{self.v0} [shape=doublecircle, style=filled, '
            f'fillcolor=lightblue, label="{self.v0}:0"];'
        )
        for v in self.live_vertices():
            if v != self.v0:
                lines.append(f'  v{v} [label="{v}:{self._verts[v].dist}"];')
        for v in self.live_vertices():
            for x, (tgt, eid) in sorted(self._verts[v].out.items()):
                if x % 2 == 0:
                    lines.append(
                        f'  v{v} -> v{self._uf_v.find(tgt)} '
                        f'[label="{letter_to_char(x)}"];'
                    )
        lines.append("}")
        return "\n".join(lines) + "\n"


def _boundary_arc_indices(boundary, shared):
    """Indices of shared vertices if they form one contiguous cyclic arc."""
    n = len(boundary)
    idxs = [k for k, b in enumerate(boundary) if b in shared]
    if not idxs:
        return None
    if len(idxs) == n:
        return idxs
    in_arc = set(idxs)
    # rotate to a start position whose predecessor is outside the arc
    starts = [k for k in idxs if (k - 1) % n not in in_arc]
    if len(starts) != 1:
        return None
    start = starts[0]
    arc = []
    k = start
    while k in in_arc:
        arc.append(k)
        k = (k + 1) % n
        if k == start:
            break
    if len(arc) != len(idxs):
        return None
    return arc


def _arc_edge_ids(cx, face, arc):
    """Edge ids along consecutive positions of a boundary arc."""
    out = set()
    n = len(face.boundary)
    for a, b in zip(arc, arc[1:]):
        if (a + 1) % n == b:
            out.add(cx._uf_e.find(face.edge_ids[a]))
    return out


def init_complex(relator, face_cap=DEFAULT_FACE_CAP, fold_rng=None):
    """S_1: the base vertex with the first relator polygon attached."""
    return Complex(relator, face_cap=face_cap, fold_rng=fold_rng)


def import_complex(data, face_cap=DEFAULT_FACE_CAP):
    """Rebuild a complex from its JSON dict; defects are collected for
    verify_structure rather than raised, so corrupt exports can be
    audited."""
    if isinstance(data, str):
        data = json.loads(data)
    word = parse_word(data["word"])
    cx = Complex._imported(word, face_cap)
    defects = cx._import_defects
    id_map = {}
    for row in sorted(data["vertices"], key=lambda r: r["id"]):
        vid = cx._new_vertex()
        id_map[row["id"]] = vid
        cx._verts[vid].dist = row.get("dist")
        cx._verts[vid].owner = row.get("owner")
    cx.v0 = id_map.get(data.get("base", 0), 0)
    for row in data["edges"]:
        try:
            x = parse_word(row["letter"])[0]
        except Exception:
            defects.append(f"edge row {row}: bad letter")
            continue
        src = id_map.get(row["src"])
        dst = id_map.get(row["dst"])
        if src is None or dst is None:
            defects.append(f"edge row {row}: unknown endpoint")
            continue
        eid = cx._uf_e.add()
        cx._live_edges += 1
        if x in cx._verts[src].out:
            defects.append(
                f"duplicate edge {row['letter']} at vertex {row['src']}"
            )
            continue
        cx._verts[src].out[x] = (dst, eid)
        if inverse(x) in cx._verts[dst].out and src != dst:
            defects.append(
                f"duplicate reverse edge {row['letter']} at {row['dst']}"
            )
        else:
            cx._verts[dst].out[inverse(x)] = (src, eid)
    for row in sorted(data["faces"], key=lambda r: r.get("order", r["id"])):
        boundary = [id_map.get(b) for b in row["boundary"]]
        if None in boundary or len(boundary) != cx.n:
            defects.append(f"face {row['id']}: bad boundary")
            continue
        fid = len(cx.faces)
        edge_ids = []
        for k in range(cx.n):
            hit = cx._verts[boundary[k]].out.get(cx.word[k])
            edge_ids.append(hit[1] if hit else -1)
            if hit is None or cx._uf_v.find(hit[0]) != boundary[(k + 1) % cx.n]:
                defects.append(f"face {row['id']}: edge {k} missing or wrong")
        sigma = boundary[0]
        if cx._verts[sigma].sigma_of is not None:
            defects.append(f"face {row['id']}: vertex {sigma} hosts two faces")
        else:
            cx._verts[sigma].sigma_of = fid
        cx.faces.append(
            Face(
                fid,
                sigma,
                boundary,
                edge_ids,
                row.get("parent", BASE),
                row.get("rho_hat", cx.n),
                row.get("phi_hat", 0),
                row.get("order", fid + 1),
            )
        )
    cx.saturated_radius = data.get("saturated_radius", -1)
    for vid in cx.live_vertices():
        if cx._verts[vid].dist is not None and cx._verts[vid].sigma_of is None:
            heapq.heappush(cx._frontier, (cx._verts[vid].dist, vid))
    return cx
