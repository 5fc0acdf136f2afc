"""Face types, vertex classes, and the finite class table.

Every face A of the complex carries a triple (rho_hat, phi_hat, two_k):
the integer representatives of its gluing-arc endpoints with
0 <= phi_hat < rho_hat <= n, and twice the boundary coordinate of the
unique point of the face farthest from the base vertex (doubled so the
edge-midpoint case stays integral).  Vertices are classified by the
type of their owning face together with their boundary index on it;
the base vertex forms its own singleton class.

The classes and the class-level transitions between them are finite in
number.  They are computed by growing a complex and scanning its safe
zone: once the build is saturated to radius R, every vertex within
distance R - n//2 has its complete and final edge star, because any
face of the full complex that touches such a vertex is attached within
n//2 boundary steps of it.  Each edge out of a safe vertex is recorded
as a same-face, push (parent to child), or pop (child to parent)
transition between classes; conflicting records for one key would
contradict the well-definedness of class transitions and raise
StructureViolation.  The scan is repeated at growing radius until
every class referenced anywhere in the table has a safe representative,
at which point the table is closed under all of its transitions.
"""

from dataclasses import dataclass

from .complexes import BASE, DEFAULT_FACE_CAP, init_complex
from .errors import StaleDistances, StructureViolation
from .words import letter_to_char, parse_word, word_to_str

KIND_SAME = "same-face"
KIND_PUSH = "push"
KIND_POP = "pop"


@dataclass(frozen=True, slots=True)
class FaceType:
    rho_hat: int
    phi_hat: int
    two_k: int

    def __str__(self):
        return f"({self.rho_hat},{self.phi_hat},{self.two_k})"


@dataclass(frozen=True, slots=True)
class VertexClass:
    """A vertex class: the singleton base class, or (face type, index)."""

    face_type: FaceType = None
    index: int = None

    @property
    def kind(self):
        return "base" if self.face_type is None else "face"

    def __str__(self):
        if self.face_type is None:
            return "[v0]"
        return f"({self.face_type},{self.index})"


BASE_CLASS = VertexClass()


def k_value(cx, fid):
    """Twice the boundary coordinate of the farthest point of a face.

    2*k = rho_hat + phi_hat + d(rho) - d(phi); the farthest point sits
    at boundary coordinate k (a vertex when 2*k is even, otherwise the
    midpoint of the edge between the two flanking vertices).  Raises
    StaleDistances if either gluing-arc endpoint lacks a distance,
    which only happens on corrupt imported data.
    """
    f = cx.faces[fid]
    d_rho = cx.distance(f.boundary[f.rho_hat % cx.n])
    d_phi = cx.distance(f.boundary[f.phi_hat])
    if d_rho is None or d_phi is None:
        raise StaleDistances(
            f"face {fid}: gluing-arc endpoint lacks an exact distance"
        )
    return f.rho_hat + f.phi_hat + d_rho - d_phi


def face_type(cx, fid):
    """The (rho_hat, phi_hat, two_k) triple classifying a face."""
    f = cx.faces[fid]
    two_k = k_value(cx, fid)
    if not 2 * f.phi_hat <= two_k <= 2 * f.rho_hat:
        raise StructureViolation(
            f"face {fid}: farthest-point coordinate {two_k}/2 outside "
            f"[{f.phi_hat}, {f.rho_hat}]"
        )
    return FaceType(f.rho_hat, f.phi_hat, two_k)


def x_indices(ft):
    """Boundary indices attaining the farthest point of a face type.

    One index when the farthest point is a vertex, the two endpoints
    of its edge when it is an edge midpoint.
    """
    two_k = ft.two_k if isinstance(ft, FaceType) else ft
    if two_k % 2 == 0:
        return (two_k // 2,)
    return ((two_k - 1) // 2, (two_k + 1) // 2)


def vertex_class(cx, vid, _ft_memo=None):
    """The class of a vertex: base, or its owner's type plus index."""
    vid = cx.find(vid)
    owner = cx.omega(vid)
    if owner == BASE:
        return BASE_CLASS
    if _ft_memo is not None:
        ft = _ft_memo.get(owner)
        if ft is None:
            ft = _ft_memo[owner] = face_type(cx, owner)
    else:
        ft = face_type(cx, owner)
    idx = cx.boundary_index(owner, vid)
    if idx is None:
        raise StructureViolation(
            f"vertex {vid} not on the boundary of its owner face {owner}"
        )
    return VertexClass(ft, idx)


class ClassTable:
    """The finite table of vertex classes and class-level transitions.

    Class ids are list positions; id 0 is the base class.  moves maps
    (class id, letter) to (kind, target id, pushed id or None) for
    same-face and push transitions, which fire regardless of the stack.
    pops maps (class id, letter) to {guard id: target id}; a pop fires
    only when the stack top equals a recorded guard (the class of the
    attachment vertex of the face being left, which varies with where
    that face sits, hence the per-guard fan-out).
    """

    def __init__(self, word, classes, reps, moves, pops, complex=None,
                 safe_radius=None, complete=True):
        self.word = tuple(word)
        self.n = len(word)
        self.classes = classes
        self.reps = reps
        self.moves = moves
        self.pops = pops
        self.complex = complex
        self.safe_radius = safe_radius
        self.complete = complete

    @property
    def n_classes(self):
        return len(self.classes)

    def alphabet(self):
        """All letters over the generators appearing in the relator."""
        gens = sorted({x >> 1 for x in self.word})
        return [x for g in gens for x in (2 * g, 2 * g + 1)]

    def face_types(self):
        return sorted(
            {c.face_type for c in self.classes if c.face_type is not None},
            key=lambda t: (t.rho_hat, t.phi_hat, t.two_k),
        )

    def id_of(self, vclass):
        try:
            return self._ids[vclass]
        except AttributeError:
            self._ids = {c: i for i, c in enumerate(self.classes)}
            return self._ids[vclass]

    def class_of_vertex(self, cx, vid):
        """The table id of a vertex's class in any complex over the word."""
        return self.id_of(vertex_class(cx, vid))

    def validate(self):
        """Re-check the table invariants; raises StructureViolation."""
        if not self.classes or self.classes[0] != BASE_CLASS:
            raise StructureViolation("class 0 is not the base class")
        if self.classes.count(BASE_CLASS) != 1:
            raise StructureViolation("base class appears more than once")
        if len(set(self.classes)) != len(self.classes):
            raise StructureViolation("duplicate class entries")
        bound = self.n * len(self.face_types()) + 1
        if self.n_classes > bound:
            raise StructureViolation(
                f"{self.n_classes} classes exceed the counting bound {bound}"
            )
        k = self.n_classes
        for (cid, x), (kind, tgt, push) in self.moves.items():
            if kind not in (KIND_SAME, KIND_PUSH):
                raise StructureViolation(f"move ({cid},{x}) has kind {kind}")
            if tgt == 0:
                raise StructureViolation(
                    f"{kind} transition from class {cid} targets the base class"
                )
            if (cid, x) in self.pops:
                raise StructureViolation(
                    f"({cid},{letter_to_char(x)}) is both a move and a pop"
                )
            if not (0 <= cid < k and 0 <= tgt < k):
                raise StructureViolation(f"move ({cid},{x}) out of range")
            if (push is None) != (kind == KIND_SAME):
                raise StructureViolation(
                    f"move ({cid},{x}): push symbol inconsistent with {kind}"
                )
            if push is not None and not 0 <= push < k:
                raise StructureViolation(f"move ({cid},{x}) pushes {push}")
        for (cid, x), guards in self.pops.items():
            if not guards:
                raise StructureViolation(f"pop ({cid},{x}) has no guards")
            for guard, tgt in guards.items():
                if not (0 <= cid < k and 0 <= guard < k and 0 <= tgt < k):
                    raise StructureViolation(f"pop ({cid},{x}) out of range")
        return self

    def describe(self):
        n_pop = sum(len(g) for g in self.pops.values())
        return (
            f"{self.n_classes} classes over {len(self.face_types())} face "
            f"types; {len(self.moves)} move rows, {n_pop} pop rows"
        )

    # -- serialization ---------------------------------------------------

    def to_json_dict(self):
        classes = []
        for cid, c in enumerate(self.classes):
            if c.face_type is None:
                classes.append(
                    {"id": cid, "kind": "base", "face_type": None, "index": None}
                )
            else:
                ft = c.face_type
                classes.append(
                    {
                        "id": cid,
                        "kind": "face",
                        "face_type": [ft.rho_hat, ft.phi_hat, ft.two_k],
                        "index": c.index,
                    }
                )
        transitions = []
        for (cid, x), (kind, tgt, push) in self.moves.items():
            transitions.append(
                {
                    "from": cid,
                    "letter": letter_to_char(x),
                    "to": tgt,
                    "kind": kind,
                    "push": push,
                    "pop_guard": None,
                }
            )
        for (cid, x), guards in self.pops.items():
            for guard, tgt in guards.items():
                transitions.append(
                    {
                        "from": cid,
                        "letter": letter_to_char(x),
                        "to": tgt,
                        "kind": KIND_POP,
                        "push": None,
                        "pop_guard": guard,
                    }
                )
        transitions.sort(
            key=lambda r: (
                r["from"],
                parse_word(r["letter"])[0],
                -1 if r["pop_guard"] is None else r["pop_guard"],
            )
        )
        return {
            "format": "class-table",
            "word": word_to_str(self.word),
            "classes": classes,
            "transitions": transitions,
        }


def import_class_table(data):
    """Rebuild a class table from its JSON dict (no working complex)."""
    import json

    if isinstance(data, str):
        data = json.loads(data)
    word = parse_word(data["word"])
    rows = sorted(data["classes"], key=lambda r: r["id"])
    if [r["id"] for r in rows] != list(range(len(rows))):
        raise ValueError("class ids are not consecutive from 0")
    classes = []
    for r in rows:
        if r["kind"] == "base":
            classes.append(BASE_CLASS)
        elif r["kind"] == "face":
            rho, phi, two_k = r["face_type"]
            classes.append(VertexClass(FaceType(rho, phi, two_k), r["index"]))
        else:
            raise ValueError(f"class {r['id']}: unknown kind {r['kind']!r}")
    moves = {}
    pops = {}
    for r in data["transitions"]:
        x = parse_word(r["letter"])[0]
        key = (r["from"], x)
        if r["kind"] in (KIND_SAME, KIND_PUSH):
            row = (r["kind"], r["to"], r.get("push"))
            if key in moves and moves[key] != row:
                raise ValueError(f"duplicate move row for {key}")
            moves[key] = row
        elif r["kind"] == KIND_POP:
            guard = r["pop_guard"]
            if guard is None:
                raise ValueError(f"pop row for {key} lacks a guard")
            tgt = pops.setdefault(key, {}).setdefault(guard, r["to"])
            if tgt != r["to"]:
                raise ValueError(f"conflicting pop rows for {key}")
        else:
            raise ValueError(f"unknown transition kind {r['kind']!r}")
    table = ClassTable(word, classes, [None] * len(classes), moves, pops)
    table.validate()
    return table


def enumerate_classes(relator, face_cap=DEFAULT_FACE_CAP, fold_rng=None):
    """Compute the closed class table for a sparse relator.

    Grows a fresh working complex until the table closes; the complex
    is kept on the returned table for reuse.  Raises NotSparse for a
    non-sparse relator and ResourceLimit if the face cap is hit before
    closure.
    """
    cx = init_complex(relator, face_cap=face_cap, fold_rng=fold_rng)
    return build_class_table(cx)


def build_class_table(cx):
    """Close the class table over a complex, growing it as needed."""
    radius = max(cx.saturated_radius, cx.n)
    while True:
        cx.build_to_radius(radius)
        table, needed = _scan_classes(cx)
        if needed is None:
            return table.validate()
        radius = max(radius + 1, needed)


def _scan_classes(cx):
    """One classification pass over the safe zone of a complex.

    Returns (table, None) when every referenced class has a safe
    representative, else (None, radius) with the radius that would
    make the nearest representative of each missing class safe.
    """
    half = cx.n // 2
    safe_limit = cx.saturated_radius - half
    ft_memo = {}
    order = sorted(
        ((cx.distance(v), v) for v in cx.live_vertices()),
        key=lambda t: (t[0], t[1]),
    )

    classes = [BASE_CLASS]
    ids = {BASE_CLASS: 0}
    reps = [cx.v0]
    nearest = {}  # class -> distance of its nearest representative
    safe_vertices = []
    cls_of = {}
    for d, v in order:
        vc = vertex_class(cx, v, ft_memo)
        if vc not in nearest:
            nearest[vc] = d
        if d <= safe_limit:
            safe_vertices.append(v)
            cid = ids.get(vc)
            if cid is None:
                cid = len(classes)
                ids[vc] = cid
                classes.append(vc)
                reps.append(v)
            cls_of[v] = cid
    n_safe_classes = len(classes)

    unsafe = {}  # class id -> nearest representative distance

    def ref(v):
        v = cx.find(v)
        vc = vertex_class(cx, v, ft_memo)
        cid = ids.get(vc)
        if cid is None:
            cid = len(classes)
            ids[vc] = cid
            classes.append(vc)
            reps.append(v)
        if cid >= n_safe_classes and cid not in unsafe:
            unsafe[cid] = nearest[vc]
        return cid

    moves = {}
    pops = {}

    def put_move(cu, x, row):
        key = (cu, x)
        if key in pops:
            raise StructureViolation(
                f"class {cu}, letter {letter_to_char(x)}: both a move "
                f"and a pop"
            )
        cur = moves.get(key)
        if cur is None:
            moves[key] = row
        elif cur != row:
            raise StructureViolation(
                f"class {cu}, letter {letter_to_char(x)}: transition not "
                f"class-determined ({cur} vs {row})"
            )

    def put_pop(cu, x, guard, tgt):
        key = (cu, x)
        if key in moves:
            raise StructureViolation(
                f"class {cu}, letter {letter_to_char(x)}: both a move "
                f"and a pop"
            )
        guards = pops.setdefault(key, {})
        cur = guards.get(guard)
        if cur is None:
            guards[guard] = tgt
        elif cur != tgt:
            raise StructureViolation(
                f"class {cu}, letter {letter_to_char(x)}, guard {guard}: "
                f"pop target not class-determined ({cur} vs {tgt})"
            )

    for u in safe_vertices:
        cu = cls_of[u]
        star = cx.edges_at(u)
        for x in sorted(star):
            v = star[x][0]
            a = cx.omega(u)
            b = cx.omega(v)
            if a == b:
                put_move(cu, x, (KIND_SAME, ref(v), None))
            elif b != BASE and cx.faces[b].parent == a:
                push = ref(cx.faces[b].sigma)
                put_move(cu, x, (KIND_PUSH, ref(v), push))
            elif a != BASE and cx.faces[a].parent == b:
                guard = ref(cx.faces[a].sigma)
                put_pop(cu, x, guard, ref(v))
            else:
                raise StructureViolation(
                    f"edge {u}->{v}: owners {a} and {b} are neither equal "
                    f"nor parent and child"
                )

    if unsafe:
        needed = max(d + half for d in unsafe.values())
        return None, max(needed, cx.saturated_radius + 1)
    table = ClassTable(
        cx.word,
        classes,
        reps,
        moves,
        pops,
        complex=cx,
        safe_radius=safe_limit,
    )
    return table, None
