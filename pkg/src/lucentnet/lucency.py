"""Lucency, transparency, conflict pairs, and marking-domination checks.

A marked net is lucent when no two distinct reachable markings enable the
same transition set: the enabled set (the marking's "footprint") then
identifies the state.  Conflict pairs are the combinatorial obstruction
used to reason about lucency: two live markings with disjoint footprints
that each keep one input place of everything the other enables marked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from .errors import (ConstructionFailed, GreedyCycle, RequiresSafeMarking,
                     UndecidedError)
from .net import Marking, PetriNet, enabled_transitions, fire, mrk
from .reachability import (ExplorationLimits, ReachabilityGraph, UNBOUNDED,
                           UnboundednessWitness, Verdict, explore)


def footprint(net: PetriNet, m: Marking) -> FrozenSet[str]:
    """The transition set enabled by ``m``; the state signature for lucency."""
    return enabled_transitions(net, m)


@dataclass(frozen=True)
class LucencyVerdict:
    status: str  # "lucent" | "not-lucent" | "undecided"
    witness: Optional[Tuple[Marking, Marking]] = None
    footprint: Optional[Tuple[str, ...]] = None
    unbounded: Optional[UnboundednessWitness] = None

    @property
    def lucent(self) -> Optional[bool]:
        return {"lucent": True, "not-lucent": False}.get(self.status)


def check_lucency(net: PetriNet, m0: Marking,
                  limits: Optional[ExplorationLimits] = None,
                  rg: Optional[ReachabilityGraph] = None) -> LucencyVerdict:
    """Index all reachable markings by footprint; lucent iff injective.

    The witness is the first colliding pair in exploration order, which
    makes it stable across runs.  An unbounded net is not lucent (it has
    more reachable markings than possible footprints), so the verdict
    carries the unboundedness witness instead of a marking pair.
    """
    rg = rg or explore(net, m0, limits)
    if rg.verdict == UNBOUNDED:
        return LucencyVerdict("not-lucent", unbounded=rg.unbounded_witness)
    if not rg.complete:
        return LucencyVerdict("undecided")
    seen: Dict[FrozenSet[str], int] = {}
    for i, m in enumerate(rg.states):
        fp = footprint(net, m)
        first = seen.get(fp)
        if first is not None:
            return LucencyVerdict("not-lucent",
                                  witness=(rg.states[first], m),
                                  footprint=tuple(sorted(fp)))
        seen[fp] = i
    return LucencyVerdict("lucent")


def is_transparent_marking(net: PetriNet, m: Marking) -> bool:
    """All tokens sit in input places of currently enabled transitions,
    one per place; no token is "hidden"."""
    required = set()
    for t in footprint(net, m):
        required |= net.preset(t)
    return m == Marking.of(*required)


def is_fully_transparent(net: PetriNet, m0: Marking,
                         limits: Optional[ExplorationLimits] = None,
                         rg: Optional[ReachabilityGraph] = None) -> Verdict:
    """Every reachable marking is transparent; witness = first that is not."""
    rg = rg or explore(net, m0, limits)
    for m in rg.states:
        if not is_transparent_marking(net, m):
            return Verdict(False, witness=m)
    if not rg.complete:
        return Verdict(None, reason=rg.verdict)
    return Verdict(True)


# -- conflict pairs ---------------------------------------------------------


@dataclass(frozen=True)
class ConflictPair:
    m1: Marking
    m2: Marking


def _pair_conditions(net: PetriNet, m1: Marking, m2: Marking) -> bool:
    """The four marking-local conflict-pair conditions (everything except
    reachability)."""
    en1 = enabled_transitions(net, m1)
    en2 = enabled_transitions(net, m2)
    if not en1 or not en2 or (en1 & en2):
        return False
    sup1 = frozenset(m1.support())
    sup2 = frozenset(m2.support())
    if any(net.preset(t).isdisjoint(sup2) for t in en1):
        return False
    if any(net.preset(t).isdisjoint(sup1) for t in en2):
        return False
    return True


def verify_conflict_pair(net: PetriNet, rg: ReachabilityGraph,
                         m1: Marking, m2: Marking) -> bool:
    """Independent five-condition check: both reachable, both non-dead,
    disjoint enabled sets, and each marking keeps at least one input place
    of every transition the other enables marked."""
    if not (rg.contains(m1) and rg.contains(m2)):
        return False
    return _pair_conditions(net, m1, m2)


def find_conflict_pairs(net: PetriNet, m0: Marking,
                        limits: Optional[ExplorationLimits] = None,
                        max_pairs: Optional[int] = None,
                        rg: Optional[ReachabilityGraph] = None
                        ) -> Tuple[ConflictPair, ...]:
    """Scan ordered state pairs for conflict pairs, in exploration order.

    Pairs are prefiltered by disjoint non-empty footprints before the two
    marked-input conditions are checked.
    """
    rg = rg or explore(net, m0, limits)
    if not rg.complete:
        raise UndecidedError(f"conflict-pair search needs a complete exploration ({rg.verdict})")
    n = len(rg.states)
    fps = [rg.enabled(i) for i in range(n)]
    sups = [frozenset(rg.states[i].support()) for i in range(n)]
    found: List[ConflictPair] = []
    for i in range(n):
        if not fps[i]:
            continue
        for j in range(i + 1, n):
            if not fps[j] or not fps[i].isdisjoint(fps[j]):
                continue
            if any(net.preset(t).isdisjoint(sups[j]) for t in fps[i]):
                continue
            if any(net.preset(t).isdisjoint(sups[i]) for t in fps[j]):
                continue
            found.append(ConflictPair(rg.states[i], rg.states[j]))
            if max_pairs is not None and len(found) >= max_pairs:
                return tuple(found)
    return tuple(found)


# -- agreement / disagreement split ----------------------------------------


@dataclass(frozen=True)
class AgreementSplit:
    """Partition of two safe markings' tokens into an agreement part and two
    disagreement parts, plus the induced transition grouping: ``t_rest``
    are the transitions touching no disagreement place."""

    p_agree: Tuple[str, ...]
    p_one: Tuple[str, ...]
    p_two: Tuple[str, ...]
    t_one: Tuple[str, ...]
    t_two: Tuple[str, ...]
    t_rest: Tuple[str, ...]


def agreement_split(net: PetriNet, m1: Marking, m2: Marking) -> AgreementSplit:
    if not (m1.is_safe() and m2.is_safe()):
        raise RequiresSafeMarking("agreement split is defined for safe markings only")
    if m1 == m2:
        raise ValueError("markings must differ")
    sup1 = set(m1.support())
    sup2 = set(m2.support())
    p_agree = sup1 & sup2
    p_one = sup1 - sup2
    p_two = sup2 - sup1
    disagree = p_one | p_two
    t_one, t_two, t_rest = [], [], []
    for t in net.transitions:
        pre = net.preset(t)
        if pre.isdisjoint(disagree):
            t_rest.append(t)
        else:
            if pre & p_one:
                t_one.append(t)
            if pre & p_two:
                t_two.append(t)
    return AgreementSplit(tuple(sorted(p_agree)), tuple(sorted(p_one)),
                          tuple(sorted(p_two)), tuple(t_one), tuple(t_two),
                          tuple(t_rest))


def derive_conflict_pair(net: PetriNet, m1: Marking, m2: Marking,
                         mode: str = "greedy",
                         cluster=None,
                         limits: Optional[ExplorationLimits] = None,
                         rg: Optional[ReachabilityGraph] = None
                         ) -> Tuple[ConflictPair, Tuple[str, ...]]:
    """Turn two distinct same-footprint markings into a conflict pair.

    Both modes fire only ``t_rest`` transitions (consuming agreement tokens
    only), simultaneously from both markings, until none is enabled; the
    disagreement tokens never move.  ``greedy`` picks the lexicographically
    smallest enabled one each round; ``guided`` needs a home cluster and
    derives the firing order from a shortest path to the cluster marking,
    splitting it with :func:`lucentnet.paths.expedite_split`.

    Returns the verified pair plus the fired sequence.
    """
    fp1 = footprint(net, m1)
    fp2 = footprint(net, m2)
    if m1 == m2:
        raise ValueError("markings must differ")
    if fp1 != fp2 or not fp1:
        raise ValueError("markings must share a non-empty footprint")
    split = agreement_split(net, m1, m2)
    allowed = frozenset(split.t_rest)

    if mode == "greedy":
        cur1, cur2 = m1, m2
        sigma: List[str] = []
        seen = {(cur1, cur2)}
        while True:
            enabled = sorted(t for t in allowed
                             if t in enabled_transitions(net, cur1)
                             and t in enabled_transitions(net, cur2))
            if not enabled:
                break
            t = enabled[0]
            cur1 = fire(net, cur1, t)
            cur2 = fire(net, cur2, t)
            sigma.append(t)
            if (cur1, cur2) in seen:
                raise GreedyCycle(f"marking pair revisited after firing {sigma}")
            seen.add((cur1, cur2))
    elif mode == "guided":
        from .net import fire_sequence
        from .paths import expedite_split

        if cluster is None:
            raise ValueError("guided mode needs the home cluster")
        graph = rg if rg is not None else explore(net, m1, limits)
        target = mrk(cluster)
        sigma_full = _shortest_firing_path(graph, m1, target)
        if sigma_full is None:
            raise ConstructionFailed(f"no firing path from {m1.pretty()} to {target.pretty()}")
        s1, _ = expedite_split(net, m1, sigma_full, m2, allowed)
        sigma = list(s1)
        cur1 = fire_sequence(net, m1, sigma)
        cur2 = fire_sequence(net, m2, sigma)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    if rg is not None:
        ok = verify_conflict_pair(net, rg, cur1, cur2)
    else:
        # without the caller's state space, check reachability from the
        # inputs themselves (firing sigma already proves it) and the
        # marking-local conditions
        ok = _pair_conditions(net, cur1, cur2)
    if not ok:
        raise ConstructionFailed(
            f"derived pair ({cur1.pretty()}, {cur2.pretty()}) failed verification; "
            "the net likely violates the construction's assumptions")
    return ConflictPair(cur1, cur2), tuple(sigma)


def _shortest_firing_path(rg: ReachabilityGraph, source: Marking,
                          target: Marking) -> Optional[Tuple[str, ...]]:
    """Shortest transition sequence between two explored markings (BFS over
    the state graph, lexicographic tie-break via edge order)."""
    if not (rg.contains(source) and rg.contains(target)):
        return None
    src, dst = rg.index[source], rg.index[target]
    if src == dst:
        return ()
    prev: Dict[int, Tuple[int, str]] = {src: (-1, "")}
    frontier = [src]
    while frontier:
        nxt = []
        for i in frontier:
            for t, j in rg.out_edges(i):
                if j not in prev:
                    prev[j] = (i, t)
                    if j == dst:
                        out = []
                        k = j
                        while k != src:
                            k, t2 = prev[k]
                            out.append(t2)
                        return tuple(reversed(out))
                    nxt.append(j)
        frontier = nxt
    return None


# -- domination checks -------------------------------------------------------


def check_no_dominating(net: PetriNet, m0: Marking, cluster,
                        limits: Optional[ExplorationLimits] = None,
                        rg: Optional[ReachabilityGraph] = None) -> Verdict:
    """No reachable marking strictly dominates the cluster marking."""
    rg = rg or explore(net, m0, limits)
    if not rg.complete:
        return Verdict(None, reason=rg.verdict)
    target = mrk(cluster)
    for m in rg.states:
        if target.lt(m):
            return Verdict(False, witness=m)
    return Verdict(True)


def check_pairwise_incomparable(net: PetriNet, m0: Marking,
                                limits: Optional[ExplorationLimits] = None,
                                rg: Optional[ReachabilityGraph] = None) -> Verdict:
    """No reachable marking strictly dominates another reachable marking.

    Strict domination forces a strictly larger token count, so only
    cross-size pairs are compared.  An unbounded exploration already
    carries a dominating pair and is answered definitively.
    """
    from .net import fire_sequence

    rg = rg or explore(net, m0, limits)
    if rg.verdict == UNBOUNDED:
        w = rg.unbounded_witness
        smaller = fire_sequence(net, m0, w.stem)
        bigger = fire_sequence(net, smaller, w.pump)
        return Verdict(False, reason="unbounded", witness=(bigger, smaller))
    if not rg.complete:
        return Verdict(None, reason=rg.verdict)
    by_size: Dict[int, List[Marking]] = {}
    for m in rg.states:
        by_size.setdefault(len(m), []).append(m)
    sizes = sorted(by_size)
    for a_idx, sa in enumerate(sizes):
        for sb in sizes[a_idx + 1:]:
            for small in by_size[sa]:
                for big in by_size[sb]:
                    if small.lt(big):
                        return Verdict(False, witness=(big, small))
    return Verdict(True)
