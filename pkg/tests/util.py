"""Shared test helpers: independent oracles and word generators."""

import random
from collections import deque

from polyfold.words import inverse


def rand_freely_reduced(rng: random.Random, max_len: int, gens: int, min_len: int = 1):
    """Uniform-ish freely reduced word: each letter avoids cancelling."""
    n = rng.randint(min_len, max_len)
    out = []
    for _ in range(n):
        choices = [x for x in range(2 * gens) if not out or x != inverse(out[-1])]
        out.append(rng.choice(choices))
    return tuple(out)


def words_up_to(letters, max_len):
    """All words (tuples) over the given letters with length <= max_len."""
    out = [()]
    layer = [()]
    for _ in range(max_len):
        layer = [w + (x,) for w in layer for x in letters]
        out.extend(layer)
    return out


def brute_clause1(p1, p2):
    """Direct (sparse 1) evaluation on a witness quadruple."""
    q1, q1p = p1
    q2, q2p = p2
    return not (set(q1.zone) & set(q2p.zone)) and not (set(q1p.zone) & set(q2.zone))


def brute_clause2(p1, p2, n):
    """Direct (sparse 2) evaluation on a witness quadruple."""
    q1, q1p = p1
    q2, q2p = p2
    if not (set(q1.zone) & set(q2.zone)):
        return True
    s1 = q1.eps * q1p.eps
    s2 = q2.eps * q2p.eps
    return s1 == s2 and (q1.i - s1 * q1p.i) % n == (q2.i - s2 * q2p.i) % n


def is_candidate_pair(q, qp):
    """Directly re-check the candidate-pair conditions for a witness piece."""
    return (
        q.letters == qp.letters
        and q.zone != qp.zone
        and 0 in set(qp.zone)
    )


def bfs_distances(adjacency, start):
    """Plain BFS oracle over {vertex: {letter: target}} adjacency."""
    dist = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for tgt in adjacency[v].values():
            if tgt not in dist:
                dist[tgt] = dist[v] + 1
                queue.append(tgt)
    return dist
