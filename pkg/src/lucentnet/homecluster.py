"""Home-cluster detection and the short-circuiting constructions.

A cluster C is a home cluster when its marking Mrk(C) (one token per
cluster place) is a home marking.  Two independent decision procedures
are provided: the direct one reads home markings off the reachability
graph; the short-circuit one adds a fresh transition consuming Pl(C) and
reproducing the initial marking, restricts the net to the nodes reachable
from the initially marked places, and decides liveness + boundedness of
the result.  For safely marked proper free-choice nets the two provably
agree, so a disagreement is reported as a hard error, never resolved
silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from .errors import (CleanedNetInvalid, ClusterNotConnected, NetStructureError,
                     RequiresSafeMarking, TheoremViolation, UndecidedError)
from .net import (Cluster, Marking, PetriNet, is_free_choice, is_proper, mrk)
from .reachability import (ExplorationLimits, ReachabilityGraph, Verdict,
                           explore, home_markings, is_bounded,
                           is_deadlock_free, is_live, is_safe)


def conn(net: PetriNet, m0: Marking) -> FrozenSet[str]:
    """All nodes on a directed path starting in an initially marked place,
    the marked places included."""
    seen = set(m0.support())
    stack = list(seen)
    while stack:
        x = stack.pop()
        for y in net.postset(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def support_closure(net: PetriNet, m0: Marking) -> FrozenSet[str]:
    """Nodes that can ever carry a token or fire: the marked places,
    every transition whose whole preset is already in the set, and that
    transition's output places, iterated to a fixpoint.

    This refines plain graph reachability: a transition can be
    graph-reachable while one of its input places never gets marked, and
    such a transition never fires.
    """
    places = set(m0.support())
    transitions: set = set()
    changed = True
    while changed:
        changed = False
        for t in net.transitions:
            if t not in transitions and net.preset(t) <= places:
                transitions.add(t)
                places |= net.postset(t)
                changed = True
    return frozenset(places | transitions)


def clean(net: PetriNet, m0: Marking) -> PetriNet:
    """Drop everything that can never carry a token or fire.

    Keeping a graph-reachable transition after one of its input places was
    dropped would shrink its preset and *add* behavior, so the restriction
    is to :func:`support_closure`, where every kept transition keeps its
    whole preset.  Raises when the leftovers no longer form a valid net.
    """
    keep = support_closure(net, m0)
    places = [p for p in net.places if p in keep]
    transitions = [t for t in net.transitions if t in keep]
    arcs = [(a, b) for a, b in sorted(net.flow) if a in keep and b in keep]
    try:
        return PetriNet(places, transitions, arcs)
    except NetStructureError as exc:
        raise CleanedNetInvalid(f"cleaned net is not a valid net: {exc}") from exc


@dataclass(frozen=True)
class ShortCircuitResult:
    net: PetriNet
    fresh_transition: str
    removed_nodes: Tuple[str, ...]


def _fresh_transition_name(net: PetriNet) -> str:
    name = "tC"
    k = 0
    taken = set(net.nodes())
    while name in taken:
        k += 1
        name = f"tC{k}"
    return name


def _attach_ring(cleaned: PetriNet, cluster: Cluster, m0: Marking,
                 removed: Tuple[str, ...]) -> ShortCircuitResult:
    fresh = _fresh_transition_name(cleaned)
    arcs = sorted(cleaned.flow)
    arcs += [(p, fresh) for p in cluster.places]
    arcs += [(fresh, p) for p in m0.support()]
    built = PetriNet(cleaned.places, cleaned.transitions + (fresh,), arcs)
    return ShortCircuitResult(built, fresh, removed)


def short_circuit(net: PetriNet, cluster: Cluster, m0: Marking) -> ShortCircuitResult:
    """Clean the net, then add a fresh transition consuming the cluster's
    places and reproducing the initial marking."""
    if not m0.is_safe():
        raise RequiresSafeMarking("short-circuiting needs a safe initial marking")
    kept = support_closure(net, m0)
    cluster_nodes = set(cluster.places) | set(cluster.transitions)
    if not cluster_nodes <= kept:
        missing = sorted(cluster_nodes - kept)
        raise ClusterNotConnected(
            f"cluster does not survive cleaning; dropped nodes: {missing}")
    removed = tuple(sorted(set(net.nodes()) - kept))
    return _attach_ring(clean(net, m0), cluster, m0, removed)


def extended_cluster(cluster: Cluster, fresh_transition: str) -> Cluster:
    """The input cluster grown by the short-circuiting transition."""
    return Cluster(cluster.places,
                   tuple(sorted(cluster.transitions + (fresh_transition,))))


def is_home_cluster_direct(net: PetriNet, m0: Marking, cluster: Cluster,
                           limits: Optional[ExplorationLimits] = None,
                           rg: Optional[ReachabilityGraph] = None) -> Verdict:
    """Mrk(C) is one of the net's home markings."""
    rg = rg or explore(net, m0, limits)
    if not rg.complete:
        return Verdict(None, reason=rg.verdict)
    homes = home_markings(net, rg)
    return Verdict(mrk(cluster) in set(homes))


def _ring_verdict(sc: ShortCircuitResult, m0: Marking,
                  limits: Optional[ExplorationLimits]) -> Verdict:
    rg2 = explore(sc.net, m0, limits)
    live = is_live(sc.net, m0, limits, rg=rg2)
    bounded = is_bounded(sc.net, m0, limits, rg=rg2)
    if bounded.value is False:
        return Verdict(False, reason="short-circuited net is unbounded")
    if live.value is False:
        return Verdict(False, reason="short-circuited net is not live",
                       witness=live.witness)
    if live.value is None or bounded.value is None:
        return Verdict(None, reason="exploration of the short-circuited net incomplete")
    return Verdict(True)


def is_home_cluster_short_circuit(net: PetriNet, m0: Marking, cluster: Cluster,
                                  limits: Optional[ExplorationLimits] = None
                                  ) -> Verdict:
    """Liveness + boundedness of the short-circuited cleaned net.

    Only meaningful for safely marked proper free-choice nets, where it is
    provably equivalent to the direct check.
    """
    if not is_free_choice(net):
        raise ValueError("short-circuit detection requires a free-choice net")
    return _ring_verdict(short_circuit(net, cluster, m0), m0, limits)


@dataclass(frozen=True)
class ClusterDetail:
    cluster: Cluster
    marking: Marking
    is_home: Optional[bool]
    direct: Optional[bool]
    short_circuit: Optional[bool]
    note: str = ""


@dataclass(frozen=True)
class HomeClusterReport:
    home_clusters: Tuple[Cluster, ...]
    method: str  # "direct" | "short-circuit" | "both"
    details: Tuple[ClusterDetail, ...]


def find_home_clusters(net: PetriNet, m0: Marking,
                       limits: Optional[ExplorationLimits] = None,
                       method: str = "both",
                       rg: Optional[ReachabilityGraph] = None) -> HomeClusterReport:
    """Run the selected detection method(s) over every cluster.

    With ``method="both"`` the two procedures are cross-checked wherever
    both apply and both decide; a disagreement raises
    :class:`TheoremViolation`.  The short-circuit method silently steps
    aside for clusters (or nets) outside its preconditions: non-free-choice
    nets, multiset initial markings, clusters not fully reachable from the
    marking.
    """
    if method not in ("direct", "short-circuit", "both"):
        raise ValueError(f"unknown method {method!r}")
    all_clusters = net.clusters()
    want_direct = method in ("direct", "both")
    want_sc = method in ("short-circuit", "both")

    if want_direct:
        rg = rg or explore(net, m0, limits)
    sc_net_ok = want_sc and is_free_choice(net) and m0.is_safe()
    kept = cleaned = None
    if sc_net_ok:
        try:
            kept = support_closure(net, m0)
            cleaned = clean(net, m0)  # shared by every cluster's ring
        except CleanedNetInvalid:
            sc_net_ok = False

    details = []
    homes = []
    for cluster in all_clusters:
        direct_v: Optional[bool] = None
        sc_v: Optional[bool] = None
        notes = []
        if want_direct:
            direct_v = is_home_cluster_direct(net, m0, cluster, limits, rg=rg).value
            if direct_v is None:
                notes.append("direct: exploration incomplete")
        if want_sc:
            if not sc_net_ok:
                notes.append("short-circuit: not applicable to this net")
            elif not set(cluster.places) | set(cluster.transitions) <= kept:
                notes.append("short-circuit: cluster does not survive cleaning")
            else:
                removed = tuple(sorted(set(net.nodes()) - kept))
                sc = _attach_ring(cleaned, cluster, m0, removed)
                sc_v = _ring_verdict(sc, m0, limits).value
                if sc_v is None:
                    notes.append("short-circuit: exploration incomplete")
        if direct_v is not None and sc_v is not None and direct_v != sc_v:
            raise TheoremViolation(
                f"home-cluster methods disagree on {cluster.pretty()}: "
                f"direct={direct_v}, short-circuit={sc_v}")
        is_home = direct_v if direct_v is not None else sc_v
        if is_home:
            homes.append(cluster)
        details.append(ClusterDetail(cluster, mrk(cluster), is_home,
                                     direct_v, sc_v, "; ".join(notes)))
    return HomeClusterReport(tuple(homes), method, tuple(details))


TERMINAL = "terminal"
REGENERATIVE = "regenerative"


def classify_dead_end(net: PetriNet, m0: Marking, cluster: Cluster,
                      limits: Optional[ExplorationLimits] = None,
                      rg: Optional[ReachabilityGraph] = None) -> str:
    """A home cluster is either a terminal point (a lone place whose
    marking is the unique dead marking) or regenerative (the net is
    deadlock-free and the cluster has transitions).  Any other shape
    contradicts the dichotomy and raises :class:`TheoremViolation`."""
    rg = rg or explore(net, m0, limits)
    if not rg.complete:
        raise UndecidedError(f"dead-end classification needs a complete exploration ({rg.verdict})")
    df = is_deadlock_free(net, rg)
    if df.value:
        if not cluster.transitions:
            raise TheoremViolation(
                f"deadlock-free net but home cluster {cluster.pretty()} has no transitions")
        return REGENERATIVE
    dead = set(df.witness)
    if dead != {mrk(cluster)} or len(cluster.places) != 1 or cluster.transitions:
        raise TheoremViolation(
            f"dead markings {sorted(m.pretty() for m in dead)} do not match the "
            f"terminal home cluster shape for {cluster.pretty()}")
    return TERMINAL


# -- structural / equivalence checks ----------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    applicable: bool
    passed: Optional[bool]
    details: str = ""

    @property
    def failed(self) -> bool:
        return self.applicable and self.passed is False


def check_strongly_connected_home_cluster(net: PetriNet, m0: Marking,
                                          limits: Optional[ExplorationLimits] = None,
                                          rg: Optional[ReachabilityGraph] = None
                                          ) -> CheckResult:
    """Strongly connected free-choice net with a home cluster: must be
    live, safe, and lucent."""
    from .lucency import check_lucency
    from .net import connectivity

    name = "strongly-connected-home-cluster"
    rg = rg or explore(net, m0, limits)
    if connectivity(net) != "strong" or not is_free_choice(net):
        return CheckResult(name, False, None, "net not strongly connected free-choice")
    report = find_home_clusters(net, m0, limits, method="direct", rg=rg)
    if not report.home_clusters:
        return CheckResult(name, False, None, "no home cluster")
    live = is_live(net, m0, limits, rg=rg)
    safe = is_safe(net, m0, limits, rg=rg)
    lucent = check_lucency(net, m0, limits, rg=rg)
    ok = live.value is True and safe.value is True and lucent.lucent is True
    return CheckResult(name, True, ok,
                       f"live={live.value} safe={safe.value} lucent={lucent.lucent}")


def check_short_circuit_structure(net: PetriNet, cluster: Cluster, m0: Marking
                                  ) -> CheckResult:
    """The short-circuited cleaned net must be strongly connected and
    free-choice, and the extended cluster must be one of its clusters."""
    from .net import connectivity

    name = "short-circuit-structure"
    if not (is_free_choice(net) and is_proper(net) and m0.is_safe()):
        return CheckResult(name, False, None, "needs a safely marked proper free-choice net")
    try:
        sc = short_circuit(net, cluster, m0)
    except (ClusterNotConnected, CleanedNetInvalid) as exc:
        return CheckResult(name, False, None, str(exc))
    strong = connectivity(sc.net) == "strong"
    fc = is_free_choice(sc.net)
    grown = extended_cluster(cluster, sc.fresh_transition)
    is_cluster = grown in sc.net.clusters()
    ok = strong and fc and is_cluster
    return CheckResult(name, True, ok,
                       f"strongly_connected={strong} free_choice={fc} extended_cluster={is_cluster}")


def check_detection_equivalence(net: PetriNet, m0: Marking, cluster: Cluster,
                                limits: Optional[ExplorationLimits] = None,
                                rg: Optional[ReachabilityGraph] = None
                                ) -> CheckResult:
    """Triangle equivalence of the three home-cluster characterizations,
    plus, for actual home clusters, equality of the reachable marking sets
    of the original and the short-circuited net."""
    name = "detection-equivalence"
    if not (is_free_choice(net) and is_proper(net) and m0.is_safe()):
        return CheckResult(name, False, None, "needs a safely marked proper free-choice net")
    cluster_nodes = set(cluster.places) | set(cluster.transitions)
    if not cluster_nodes <= support_closure(net, m0):
        return CheckResult(name, False, None, "cluster does not survive cleaning")
    rg = rg or explore(net, m0, limits)
    direct = is_home_cluster_direct(net, m0, cluster, limits, rg=rg)
    try:
        sc = short_circuit(net, cluster, m0)
    except CleanedNetInvalid as exc:
        return CheckResult(name, False, None, str(exc))
    rg2 = explore(sc.net, m0, limits)
    live = is_live(sc.net, m0, limits, rg=rg2)
    bounded = is_bounded(sc.net, m0, limits, rg=rg2)
    live_and_bounded: Optional[bool]
    if live.value is False or bounded.value is False:
        live_and_bounded = False
    elif live.value is None or bounded.value is None:
        live_and_bounded = None
    else:
        live_and_bounded = True
    grown = extended_cluster(cluster, sc.fresh_transition)
    sc_direct: Optional[bool] = None
    if grown in sc.net.clusters() and rg2.complete:
        sc_direct = (mrk(grown) in set(home_markings(sc.net, rg2)))

    values = [v for v in (direct.value, sc_direct, live_and_bounded) if v is not None]
    if not values:
        return CheckResult(name, False, None, "all three checks undecided")
    agree = all(v == values[0] for v in values)
    detail = (f"direct={direct.value} extended_direct={sc_direct} "
              f"live_and_bounded={live_and_bounded}")
    if not agree:
        return CheckResult(name, True, False, detail)
    if values[0] and rg.complete and rg2.complete:
        same_states = set(rg.states) == set(rg2.states)
        if not same_states:
            return CheckResult(name, True, False, detail + " reachable_sets_differ")
    return CheckResult(name, True, True, detail)
