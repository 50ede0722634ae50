"""Paths, circuits, disentangled paths, and the expediting calculus.

A disentangled path is a place-to-place path whose places lie in pairwise
distinct clusters; rooted in a node set Q when it ends inside Q.  Such
paths carry at most one token in free-choice nets with a home cluster,
which is what most of the verification machinery here exploits.

Expediting rewrites an enabled firing sequence by moving a later
transition forward when (a) the rewritten prefix is still enabled and
(b) no transition of the same cluster stands in between.  All sequence
positions in this module are 1-based, matching the usual subscript
notation for sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import BadIndices, InvalidPath, NotEnabled, UndecidedError
from .net import (Marking, PetriNet, enabled_transitions, fire, fire_sequence,
                  sequence_enabled, sequence_to_multiset)
from .reachability import (ExplorationLimits, ReachabilityGraph, Verdict,
                           explore)


# -- paths -------------------------------------------------------------------


def is_path(net: PetriNet, nodes: Sequence[str]) -> bool:
    """Non-empty node sequence with consecutive nodes flow-connected."""
    if not nodes:
        return False
    if not all(net.has_node(x) for x in nodes):
        return False
    return all((nodes[i], nodes[i + 1]) in net.flow for i in range(len(nodes) - 1))


def is_elementary(net: PetriNet, nodes: Sequence[str]) -> bool:
    """A path with no repeated node."""
    return is_path(net, nodes) and len(set(nodes)) == len(nodes)


def is_circuit(net: PetriNet, nodes: Sequence[str]) -> bool:
    """An elementary path whose last node feeds back into its first."""
    return is_elementary(net, nodes) and nodes[0] in net.postset(nodes[-1])


def is_disentangled(net: PetriNet, nodes: Sequence[str]) -> bool:
    """Starts and ends with a place; all places on the path lie in pairwise
    distinct clusters (which also makes the path elementary)."""
    if not is_path(net, nodes):
        return False
    if not (net.is_place(nodes[0]) and net.is_place(nodes[-1])):
        return False
    place_clusters = [net.cluster_of(x) for x in nodes if net.is_place(x)]
    return len(set(id(c) for c in place_clusters)) == len(place_clusters)


def is_q_rooted(net: PetriNet, nodes: Sequence[str], q: Iterable[str]) -> bool:
    """The path ends inside the node set ``q``."""
    return bool(nodes) and nodes[-1] in set(q)


@dataclass(frozen=True)
class Path:
    """A validated path; invalid node sequences never circulate."""

    nodes: Tuple[str, ...]

    @staticmethod
    def of(net: PetriNet, nodes: Sequence[str]) -> "Path":
        if not is_path(net, nodes):
            raise InvalidPath(f"not a path: {list(nodes)}")
        return Path(tuple(nodes))

    def places(self, net: PetriNet) -> Tuple[str, ...]:
        return tuple(x for x in self.nodes if net.is_place(x))

    def transitions(self, net: PetriNet) -> Tuple[str, ...]:
        return tuple(x for x in self.nodes if net.is_transition(x))


@dataclass(frozen=True)
class DisentangledPath(Path):
    @staticmethod
    def of(net: PetriNet, nodes: Sequence[str]) -> "DisentangledPath":
        if not is_disentangled(net, nodes):
            raise InvalidPath(f"not a disentangled path: {list(nodes)}")
        return DisentangledPath(tuple(nodes))


def disentangle(net: PetriNet, nodes: Sequence[str], cluster) -> DisentangledPath:
    """Shortcut a place-to-place path into a cluster-rooted disentangled one.

    Cursor scan over the path's places: reaching a place of the target
    cluster truncates the path; a place whose cluster reappears later jumps
    to the *largest* such position, connecting directly to the transition
    fired there (legal in a free-choice net, where a cluster's transition
    consumes from all of the cluster's places).  The result starts at the
    same place and uses only transitions of the input path.
    """
    nodes = tuple(nodes)
    if isinstance(nodes, Path):
        nodes = nodes.nodes
    if not is_path(net, nodes):
        raise InvalidPath(f"not a path: {list(nodes)}")
    if not net.is_place(nodes[0]):
        raise InvalidPath("path must start at a place")
    target_nodes = set(cluster.places) | set(cluster.transitions)
    if not (net.is_place(nodes[-1]) and nodes[-1] in target_nodes):
        raise InvalidPath("path must end at a place of the target cluster")

    out: List[str] = []
    k = 0  # always a place position; place-to-place paths alternate
    while True:
        p = nodes[k]
        if p in target_nodes:
            out.append(p)
            break
        my_cluster = net.cluster_of(p)
        jump = -1
        for j in range(k + 2, len(nodes), 2):
            if net.cluster_of(nodes[j]) is my_cluster:
                jump = j
        if jump >= 0:
            # nodes[jump] shares p's cluster, so the transition following it
            # also consumes from p; connect p straight to that transition
            out.append(p)
            out.append(nodes[jump + 1])
            k = jump + 2
        else:
            out.append(p)
            out.append(nodes[k + 1])
            k += 2
    return DisentangledPath.of(net, out)


@dataclass(frozen=True)
class RootedPathResult:
    path: Optional[DisentangledPath]
    reason: str = ""  # "" | "dead-place" | "no-graph-path"
    anomaly: bool = False

    @property
    def found(self) -> bool:
        return self.path is not None


def find_rooted_path(net: PetriNet, m0: Marking, place: str, cluster,
                     limits: Optional[ExplorationLimits] = None,
                     rg: Optional[ReachabilityGraph] = None) -> RootedPathResult:
    """A cluster-rooted disentangled path from a non-dead place.

    Breadth-first over the net graph with lexicographic expansion, then
    disentangled.  ``no-graph-path`` for a non-dead place is flagged as an
    anomaly: in a proper free-choice net with a home cluster such a path
    must exist.
    """
    rg = rg or explore(net, m0, limits)
    marked_somewhere = any(place in m for m in rg.states)
    if not marked_somewhere:
        if not rg.complete:
            raise UndecidedError("deadness of the start place is unknown (exploration incomplete)")
        return RootedPathResult(None, reason="dead-place")

    target_places = set(cluster.places)
    prev = {place: None}
    frontier = [place]
    hit = place if place in target_places else None
    while frontier and hit is None:
        nxt = []
        for x in frontier:
            for y in sorted(net.postset(x)):
                if y in prev:
                    continue
                prev[y] = x
                if y in target_places:
                    hit = y
                    break
                nxt.append(y)
            if hit is not None:
                break
        frontier = nxt
    if hit is None:
        return RootedPathResult(None, reason="no-graph-path", anomaly=True)
    chain = [hit]
    while prev[chain[-1]] is not None:
        chain.append(prev[chain[-1]])
    chain.reverse()
    return RootedPathResult(disentangle(net, chain, cluster))


def verify_path_safety(net: PetriNet, m0: Marking, path,
                       limits: Optional[ExplorationLimits] = None,
                       rg: Optional[ReachabilityGraph] = None) -> Verdict:
    """All the path's places together hold at most one token in every
    reachable marking; witness = first violating marking."""
    nodes = path.nodes if isinstance(path, Path) else tuple(path)
    places = {x for x in nodes if net.is_place(x)}
    rg = rg or explore(net, m0, limits)
    for m in rg.states:
        if m.total(places) > 1:
            return Verdict(False, witness=m)
    if not rg.complete:
        return Verdict(None, reason=rg.verdict)
    return Verdict(True)


# -- expediting ---------------------------------------------------------------


def _check_indices(seq: Sequence[str], i: int, j: int):
    if not (1 <= i < j <= len(seq)):
        raise BadIndices(f"need 1 <= i < j <= {len(seq)}, got ({i}, {j})")


def expedite(seq: Sequence[str], i: int, j: int) -> Tuple[str, ...]:
    """Move the j-th element to position i, shifting the block in between
    one step right (positions 1-based)."""
    _check_indices(seq, i, j)
    s = tuple(seq)
    return s[:i - 1] + (s[j - 1],) + s[i - 1:j - 1] + s[j:]


def can_expedite(net: PetriNet, m: Marking, seq: Sequence[str], i: int, j: int) -> bool:
    """Whether the j-th transition of an enabled sequence may move to
    position i: the rewritten prefix must be enabled and no transition of
    the j-th one's cluster may occur at positions i..j-1."""
    _check_indices(seq, i, j)
    s = tuple(seq)
    if not sequence_enabled(net, m, s):
        raise NotEnabled("the sequence itself is not enabled")
    mover = s[j - 1]
    if any(net.same_cluster(s[k], mover) for k in range(i - 1, j - 1)):
        return False
    return sequence_enabled(net, m, s[:i - 1] + (mover,))


@dataclass(frozen=True)
class Expedition:
    """A replayable move script over an enabled base sequence."""

    base: Tuple[str, ...]
    start: Marking
    moves: Tuple[Tuple[int, int], ...]

    def apply(self, net: PetriNet) -> Tuple[str, ...]:
        seq = self.base
        for i, j in self.moves:
            if not can_expedite(net, self.start, seq, i, j):
                raise NotEnabled(f"move ({i}, {j}) is not a legal expedite step on {list(seq)}")
            seq = expedite(seq, i, j)
        return seq


def _closure_neighbors(net: PetriNet, m: Marking, seq: Tuple[str, ...]):
    """All single expedite moves applicable to an enabled sequence."""
    n = len(seq)
    for j in range(2, n + 1):
        mover = seq[j - 1]
        for i in range(j - 1, 0, -1):
            # walking i downward: once a same-cluster transition appears at
            # position i, smaller i are blocked too
            if net.same_cluster(seq[i - 1], mover):
                break
            if sequence_enabled(net, m, seq[:i - 1] + (mover,)):
                yield (i, j), expedite(seq, i, j)


def expedited_member(net: PetriNet, m: Marking, base: Sequence[str],
                     candidate: Sequence[str],
                     budget: int = 10_000) -> Verdict:
    """Decide whether ``candidate`` arises from ``base`` by repeated
    expedite moves, without materializing the whole closure.

    Cheap rejections first: every member is a permutation of the base and
    is enabled.  Then a breadth-first search over single moves; a fully
    explored closure gives a definite no, an exhausted budget gives
    undecided.
    """
    base = tuple(base)
    candidate = tuple(candidate)
    if not sequence_enabled(net, m, base):
        raise NotEnabled("base sequence is not enabled")
    if base == candidate:
        return Verdict(True)
    if sequence_to_multiset(base) != sequence_to_multiset(candidate):
        return Verdict(False, reason="not a permutation of the base")
    if not sequence_enabled(net, m, candidate):
        return Verdict(False, reason="candidate is not enabled")
    seen = {base}
    frontier = [base]
    spent = 0
    while frontier:
        nxt = []
        for seq in frontier:
            for _, rewritten in _closure_neighbors(net, m, seq):
                if rewritten in seen:
                    continue
                if rewritten == candidate:
                    return Verdict(True)
                seen.add(rewritten)
                nxt.append(rewritten)
                spent += 1
                if spent >= budget:
                    return Verdict(None, reason="search budget exceeded")
        frontier = nxt
    return Verdict(False, reason="closure exhausted")


def expedite_split(net: PetriNet, m_from: Marking, seq: Sequence[str],
                   m_alt: Marking, t_allow: Iterable[str]
                   ) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
    """Greedily expedite allowed transitions of an enabled sequence to the
    front, as long as the growing prefix also fires from ``m_alt``.

    Returns ``(s1, s2)`` with ``s1 + s2`` an expedited variant of ``seq``,
    ``s1`` made of ``t_allow`` transitions enabled in order from ``m_alt``,
    and, at the fixpoint, no allowed transition of the remainder enabled at
    the marking ``m_alt`` reaches after ``s1``.
    """
    seq = list(seq)
    if not sequence_enabled(net, m_from, seq):
        raise NotEnabled("sequence is not enabled from m_from")
    allowed = frozenset(t_allow)
    done = 0
    cur_alt = m_alt
    while True:
        pick = -1
        for j in range(done, len(seq)):
            t = seq[j]
            if t not in allowed or t not in enabled_transitions(net, cur_alt):
                continue
            if j == done:
                pick = j
                break
            if any(net.same_cluster(seq[k], t) for k in range(done, j)):
                continue
            if not sequence_enabled(net, m_from, seq[:done] + [t]):
                continue
            pick = j
            break
        if pick < 0:
            break
        if pick != done:
            seq = seq[:done] + [seq[pick]] + seq[done:pick] + seq[pick + 1:]
        cur_alt = fire(net, cur_alt, seq[done])
        done += 1
    return tuple(seq[:done]), tuple(seq[done:])


def verify_expedite_safe(net: PetriNet, m: Marking, seq: Sequence[str],
                         samples: int = 50) -> Verdict:
    """Replay up to ``samples`` expedited variants of an enabled sequence
    (breadth-first over single moves, deterministic order) and check that
    each is enabled and reaches the same final marking."""
    seq = tuple(seq)
    expected = fire_sequence(net, m, seq)
    seen = {seq}
    frontier = [seq]
    checked = 0
    while frontier and checked < samples:
        nxt = []
        for s in frontier:
            for _, rewritten in _closure_neighbors(net, m, s):
                if rewritten in seen:
                    continue
                seen.add(rewritten)
                if not sequence_enabled(net, m, rewritten):
                    return Verdict(False, witness=rewritten, reason="variant not enabled")
                if fire_sequence(net, m, rewritten) != expected:
                    return Verdict(False, witness=rewritten, reason="final marking differs")
                checked += 1
                nxt.append(rewritten)
                if checked >= samples:
                    break
            if checked >= samples:
                break
        frontier = nxt
    return Verdict(True, witness=checked)
