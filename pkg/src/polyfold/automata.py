"""Automata over vertex classes: the word-problem PDA and geodesic FSA.

The deterministic pushdown automaton has the vertex classes as both
its states and its stack alphabet, starts in the base class with the
base class as the only stack symbol, and follows the class table:
same-face rows keep the stack, push rows push the class of the entered
face's attachment vertex, and pop rows fire only when the stack top
equals the recorded guard.  With accept set {base} it recognizes the
words equal to 1 in the monoid; with all states accepting it
recognizes the words in the R-class of 1 (the words labeling paths
from the base vertex).

The geodesic automaton is the finite-state restriction: it keeps every
push row and exactly those same-face rows that move strictly toward
the farthest point of the face (index comparisons doubled against
two_k so edge-midpoint farthest points stay integral), drops all pops,
and accepts in every state.  Completing it with a dead state and
minimizing by partition refinement yields the automaton of cone types;
the live-state count (initial state included, dead state excluded) is
the number of cone types.
"""

from dataclasses import dataclass

from .complexes import BASE
from .errors import IncompleteTable, StructureViolation
from .facetypes import KIND_PUSH, KIND_SAME
from .words import coerce_word, letter_to_char, word_to_str


@dataclass(frozen=True, slots=True)
class PDARun:
    accepted: bool
    state: int
    stack: tuple  # bottom first; the top is the last entry
    fail_position: int  # None when the input was fully consumed


class PDA:
    """Deterministic pushdown automaton over a closed class table."""

    def __init__(self, table, accept):
        if accept not in ("identity", "rclass"):
            raise ValueError(f"unknown accept set {accept!r}")
        if not table.complete:
            raise IncompleteTable("class table is not closed")
        self.table = table
        self.word = table.word
        self.accept = accept
        self.initial = 0
        self.initial_stack = (0,)

    @property
    def n_states(self):
        return self.table.n_classes

    def is_accepting(self, state):
        return state == 0 if self.accept == "identity" else True

    def run(self, u):
        word = coerce_word(u)
        moves = self.table.moves
        pops = self.table.pops
        state = 0
        stack = [0]
        for pos, x in enumerate(word):
            mv = moves.get((state, x))
            if mv is not None:
                _kind, tgt, push = mv
                if push is not None:
                    stack.append(push)
                state = tgt
                continue
            guards = pops.get((state, x))
            if guards is not None and stack:
                tgt = guards.get(stack[-1])
                if tgt is not None:
                    stack.pop()
                    state = tgt
                    continue
            return PDARun(False, state, tuple(stack), pos)
        return PDARun(self.is_accepting(state), state, tuple(stack), None)

    def accepts(self, u):
        return self.run(u).accepted

    # -- rendering ---------------------------------------------------------

    def _sorted_rows(self):
        rows = []
        for (cid, x), (kind, tgt, push) in self.table.moves.items():
            rows.append((cid, x, None, tgt, kind, push))
        for (cid, x), guards in self.table.pops.items():
            for guard, tgt in guards.items():
                rows.append((cid, x, guard, tgt, "pop", None))
        rows.sort(key=lambda r: (r[0], r[1], -1 if r[2] is None else r[2]))
        return rows

    def to_text(self):
        lines = [
            f"{self.accept} PDA over {word_to_str(self.word)}: "
            f"{self.n_states} states, accept "
            + ("{0}" if self.accept == "identity" else "all states"),
            "state  letter  top  ->  state  action",
        ]
        for cid, x, guard, tgt, kind, push in self._sorted_rows():
            top = "*" if guard is None else str(guard)
            if kind == KIND_SAME:
                action = "keep"
            elif kind == KIND_PUSH:
                action = f"push {push}"
            else:
                action = "pop"
            lines.append(
                f"{cid:<6} {letter_to_char(x):<7} {top:<4} ->  "
                f"{tgt:<6} {action}"
            )
        return "\n".join(lines) + "\n"

    def to_json_dict(self):
        data = self.table.to_json_dict()
        data["format"] = "pda"
        data["accept"] = self.accept
        data["initial"] = self.initial
        data["initial_stack"] = list(self.initial_stack)
        return data


def build_pda(table, accept="identity"):
    """The word-problem PDA; accept is "identity" or "rclass"."""
    return PDA(table, accept)


def pda_run(pda, u):
    return pda.run(u)


def stack_oracle(cx, vid, table):
    """The expected PDA stack at a vertex, bottom first.

    The base class sits at the bottom; above it, the class of each
    attachment vertex along the chain of faces from the first face
    down to the vertex's owner.
    """
    vid = cx.find(vid)
    chain = []
    fid = cx.omega(vid)
    while fid != BASE:
        f = cx.faces[fid]
        chain.append(table.class_of_vertex(cx, f.sigma))
        fid = f.parent
    chain.append(0)
    chain.reverse()
    return tuple(chain)


class GeodesicFSA:
    """Partial FSA accepting the geodesic words; all states accept."""

    def __init__(self, word, classes, delta):
        self.word = tuple(word)
        self.classes = classes
        self.delta = delta
        self.initial = 0

    @property
    def n_states(self):
        return len(self.classes)

    def alphabet(self):
        gens = sorted({x >> 1 for x in self.word})
        return [x for g in gens for x in (2 * g, 2 * g + 1)]

    def is_accepting(self, state):
        return True

    def run(self, u):
        """Final state, or None once the run leaves the automaton."""
        state = 0
        for x in coerce_word(u):
            state = self.delta.get((state, x))
            if state is None:
                return None
        return state

    def accepts(self, u):
        return self.run(u) is not None

    def to_dot(self):
        lines = [
            "digraph geodesic_fsa {",
            "  rankdir=LR;",
            "  node [shape=doublecircle];",
            "  start [shape=point];",
            f"  start -> q{self.initial};",
        ]
        used = {self.initial}
        for (s, _x), t in self.delta.items():
            used.add(s)
            used.add(t)
        for s in sorted(used):
            lines.append(f'  q{s} [label="{s}"];')
        for (s, x), t in sorted(self.delta.items()):
            lines.append(f'  q{s} -> q{t} [label="{letter_to_char(x)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self):
        transitions = [
            {"from": s, "letter": letter_to_char(x), "to": t}
            for (s, x), t in sorted(self.delta.items())
        ]
        return {
            "format": "geodesic-fsa",
            "word": word_to_str(self.word),
            "initial": self.initial,
            "n_states": self.n_states,
            "accepting": "all",
            "transitions": transitions,
        }


def build_geodesic_fsa(table):
    """Push rows plus the same-face rows that move toward the far point."""
    if not table.complete:
        raise IncompleteTable("class table is not closed")
    delta = {}
    for (cid, x), (kind, tgt, _push) in table.moves.items():
        if kind == KIND_PUSH:
            delta[(cid, x)] = tgt
            continue
        cu = table.classes[cid]
        cv = table.classes[tgt]
        if cu.face_type != cv.face_type:
            raise StructureViolation(
                f"same-face row ({cid},{letter_to_char(x)}) crosses face "
                f"types {cu.face_type} and {cv.face_type}"
            )
        i, j, two_k = cu.index, cv.index, cu.face_type.two_k
        if (i < j and 2 * j <= two_k) or (i > j and 2 * j >= two_k):
            delta[(cid, x)] = tgt
    return GeodesicFSA(table.word, list(table.classes), delta)


class MinimizedDFA:
    """Complete minimal DFA; live states are the cone types."""

    def __init__(self, word, n_states, delta, accepting, dead, members):
        self.word = tuple(word)
        self.n_states = n_states
        self.delta = delta  # total over live states and the alphabet
        self.accepting = accepting
        self.dead = dead  # state id, or None if the machine is total
        self.members = members  # state -> sorted source-state ids
        self.initial = 0

    @property
    def n_cone_types(self):
        return self.n_states - (0 if self.dead is None else 1)

    def alphabet(self):
        gens = sorted({x >> 1 for x in self.word})
        return [x for g in gens for x in (2 * g, 2 * g + 1)]

    def is_accepting(self, state):
        return state in self.accepting

    def run(self, u):
        state = 0
        for x in coerce_word(u):
            state = self.delta.get((state, x))
            if state is None:
                return self.dead if self.dead is not None else None
            if state == self.dead:
                return state
        return state

    def accepts(self, u):
        state = self.run(u)
        return state is not None and state in self.accepting

    def to_dot(self):
        plural = "" if self.n_cone_types == 1 else "s"
        lines = [
            "digraph cone_types {",
            f'  label="{self.n_cone_types} cone type{plural}; '
            'undefined transitions fail";',
            "  rankdir=LR;",
            "  node [shape=doublecircle];",
            "  start [shape=point];",
            f"  start -> q{self.initial};",
        ]
        for s in range(self.n_states):
            if s == self.dead:
                continue
            lines.append(f'  q{s} [label="{s}"];')
        for (s, x), t in sorted(self.delta.items()):
            if s == self.dead or t == self.dead:
                continue
            lines.append(f'  q{s} -> q{t} [label="{letter_to_char(x)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self):
        transitions = [
            {"from": s, "letter": letter_to_char(x), "to": t}
            for (s, x), t in sorted(self.delta.items())
        ]
        return {
            "format": "geodesic-dfa",
            "word": word_to_str(self.word),
            "initial": self.initial,
            "n_states": self.n_states,
            "n_cone_types": self.n_cone_types,
            "dead": self.dead,
            "accepting": sorted(self.accepting),
            "members": [
                {"state": s, "sources": self.members[s]}
                for s in sorted(self.members)
            ],
            "transitions": transitions,
        }


def minimize(machine):
    """Complete with a dead state, then merge indistinguishable states.

    Accepts the geodesic FSA or an already-minimized DFA (minimization
    is idempotent).  States unreachable from the initial state are
    discarded first; the result is relabeled breadth-first, so equal
    machines minimize to identical objects.
    """
    alphabet = machine.alphabet()
    delta = machine.delta

    reachable = [machine.initial]
    seen = {machine.initial}
    qi = 0
    while qi < len(reachable):
        s = reachable[qi]
        qi += 1
        for x in alphabet:
            t = delta.get((s, x))
            if t is not None and t not in seen:
                seen.add(t)
                reachable.append(t)

    # internal ids 0..m-1 for reachable states, m for the dead state
    index = {s: i for i, s in enumerate(reachable)}
    m = len(reachable)
    dead = m
    total = []
    for s in reachable:
        row = []
        for x in alphabet:
            t = delta.get((s, x))
            row.append(dead if t is None else index[t])
        total.append(row)
    total.append([dead] * len(alphabet))
    accepting = [machine.is_accepting(s) for s in reachable] + [False]

    # partition refinement: split blocks by (acceptance, successor blocks)
    block = [0 if acc else 1 for acc in accepting]
    if len(set(block)) == 1:
        block = [0] * (m + 1)
    while True:
        sig_ids = {}
        new_block = []
        for s in range(m + 1):
            sig = (block[s], tuple(block[t] for t in total[s]))
            bid = sig_ids.setdefault(sig, len(sig_ids))
            new_block.append(bid)
        if new_block == block:
            break
        block = new_block

    # relabel blocks breadth-first from the initial block
    order = {block[index[machine.initial]]: 0}
    queue = [block[index[machine.initial]]]
    rep_of = {}
    for s in range(m + 1):
        rep_of.setdefault(block[s], s)
    qi = 0
    while qi < len(queue):
        b = queue[qi]
        qi += 1
        for xi in range(len(alphabet)):
            tb = block[total[rep_of[b]][xi]]
            if tb not in order:
                order[tb] = len(order)
                queue.append(tb)

    n_states = len(order)
    dead_block = block[dead]
    dead_id = order.get(dead_block)  # None if the dead block is unreachable
    out_delta = {}
    members = {}
    for s in range(m + 1):
        b = block[s]
        if b not in order:
            continue
        sid = order[b]
        if s < m:
            members.setdefault(sid, []).append(reachable[s])
        elif sid not in members:
            members[sid] = []
    for sid in members:
        members[sid] = sorted(members[sid])
    accepting_out = frozenset(
        order[block[s]]
        for s in range(m + 1)
        if accepting[s] and block[s] in order
    )
    for b, sid in order.items():
        row = total[rep_of[b]]
        for xi, x in enumerate(alphabet):
            out_delta[(sid, x)] = order[block[row[xi]]]
    return MinimizedDFA(
        machine.word, n_states, out_delta, accepting_out, dead_id, members
    )
