"""CLOS topology construction, equal-cost path enumeration, and source-route labels.

Two fabric shapes are supported: two-tier leaf-spine and three-tier fat-tree
(leaves and spines grouped into pods, pods joined by a core layer). A path is
named by a 16-bit label: the high byte selects the uplink index at the
first-hop leaf, the low byte selects the uplink index at the second-hop spine
(zero when the path never reaches the core). Every switch forwards on the high
byte and then swaps the two bytes, so the label a receiver sees, swapped once
more, routes an acknowledgment over exactly the reverse link set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

LEAF_SPINE = "leaf_spine"
FAT_TREE = "fat_tree"

#: Labels carry one byte per hop choice, so no switch may expose more uplinks.
MAX_UPLINKS = 256


class InvalidRouteError(ValueError):
    """A path label names an uplink index the switch does not have."""


class LinkId(NamedTuple):
    """One directed edge. ``index`` disambiguates parallel cables."""

    src: str
    dst: str
    index: int

    def reversed(self) -> "LinkId":
        return LinkId(self.dst, self.src, self.index)


def swap_path_id(path_id: int) -> int:
    """Exchange the two bytes of a 16-bit path label."""
    if not 0 <= path_id <= 0xFFFF:
        raise ValueError(f"path id out of 16-bit range: {path_id}")
    return ((path_id & 0xFF) << 8) | (path_id >> 8)


def make_path_id(first_hop: int, second_hop: int = 0) -> int:
    """Build a label from the leaf uplink index and optional spine uplink index."""
    if not 0 <= first_hop < MAX_UPLINKS or not 0 <= second_hop < MAX_UPLINKS:
        raise ValueError("uplink indices must fit in one byte")
    return (first_hop << 8) | second_hop


def host_name(host: int) -> str:
    return f"h{host}"


def leaf_name(leaf: int) -> str:
    return f"leaf{leaf}"


def spine_name(spine: int) -> str:
    return f"spine{spine}"


def core_name(core: int) -> str:
    return f"core{core}"


@dataclass(frozen=True)
class Topology:
    """Immutable CLOS fabric description.

    All capacities are bits/second per directed link, latencies in seconds.
    Hosts are numbered row-major by leaf: leaf ``j`` owns hosts
    ``[j * hosts_per_leaf, (j + 1) * hosts_per_leaf)``.
    """

    tier: str
    num_leaves: int
    num_spines: int
    num_cores: int
    hosts_per_leaf: int
    link_capacity: float
    link_latency: float
    parallel_links: int = 1
    pods: int = 0  # 0 for leaf-spine

    num_hosts: int = field(init=False)
    uplinks_per_leaf: int = field(init=False)
    spines_per_pod: int = field(init=False)
    leaves_per_pod: int = field(init=False)
    cores_per_spine: int = field(init=False)
    uplinks_per_spine: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "num_hosts", self.num_leaves * self.hosts_per_leaf)
        if self.tier == LEAF_SPINE:
            object.__setattr__(self, "spines_per_pod", self.num_spines)
            object.__setattr__(self, "leaves_per_pod", self.num_leaves)
            object.__setattr__(self, "cores_per_spine", 0)
            object.__setattr__(self, "uplinks_per_spine", 0)
        else:
            object.__setattr__(self, "spines_per_pod", self.num_spines // self.pods)
            object.__setattr__(self, "leaves_per_pod", self.num_leaves // self.pods)
            object.__setattr__(
                self, "cores_per_spine", self.num_cores // self.spines_per_pod
            )
            object.__setattr__(
                self, "uplinks_per_spine", self.cores_per_spine * self.parallel_links
            )
        object.__setattr__(
            self, "uplinks_per_leaf", self.spines_per_pod * self.parallel_links
        )

    # --- placement -------------------------------------------------------

    def leaf_of(self, host: int) -> int:
        if not 0 <= host < self.num_hosts:
            raise ValueError(f"unknown host {host}")
        return host // self.hosts_per_leaf

    def hosts_of(self, leaf: int) -> range:
        return range(leaf * self.hosts_per_leaf, (leaf + 1) * self.hosts_per_leaf)

    def pod_of_leaf(self, leaf: int) -> int:
        return leaf // self.leaves_per_pod if self.tier == FAT_TREE else 0

    def pod_of_spine(self, spine: int) -> int:
        return spine // self.spines_per_pod if self.tier == FAT_TREE else 0

    def pod_spine(self, pod: int, index_in_pod: int) -> int:
        """Global spine id of the ``index_in_pod``-th spine of ``pod``."""
        return pod * self.spines_per_pod + index_in_pod

    def core_group(self, core: int) -> int:
        """Pod-local spine index this core attaches to (in every pod)."""
        return core // self.cores_per_spine

    def spine_cores(self, spine: int) -> range:
        """Cores wired to a given spine, ordered by uplink index."""
        g = spine % self.spines_per_pod
        return range(g * self.cores_per_spine, (g + 1) * self.cores_per_spine)

    # --- link naming ------------------------------------------------------

    def leaf_uplink(self, leaf: int, uplink: int) -> LinkId:
        """Directed leaf-to-next-tier edge for a flattened uplink index."""
        if not 0 <= uplink < self.uplinks_per_leaf:
            raise InvalidRouteError(
                f"leaf {leaf} has {self.uplinks_per_leaf} uplinks, got index {uplink}"
            )
        dev, cable = divmod(uplink, self.parallel_links)
        if self.tier == LEAF_SPINE:
            spine = dev
        else:
            spine = self.pod_spine(self.pod_of_leaf(leaf), dev)
        return LinkId(leaf_name(leaf), spine_name(spine), cable)

    def spine_uplink(self, spine: int, uplink: int) -> LinkId:
        if self.tier != FAT_TREE:
            raise InvalidRouteError("leaf-spine fabrics have no spine uplinks")
        if not 0 <= uplink < self.uplinks_per_spine:
            raise InvalidRouteError(
                f"spine {spine} has {self.uplinks_per_spine} uplinks, got index {uplink}"
            )
        dev, cable = divmod(uplink, self.parallel_links)
        core = self.spine_cores(spine)[dev]
        return LinkId(spine_name(spine), core_name(core), cable)

    def links(self) -> list[LinkId]:
        """Every directed edge of the failure-free fabric."""
        out: list[LinkId] = []
        for h in range(self.num_hosts):
            leaf = leaf_name(self.leaf_of(h))
            out.append(LinkId(host_name(h), leaf, 0))
            out.append(LinkId(leaf, host_name(h), 0))
        for leaf in range(self.num_leaves):
            for up in range(self.uplinks_per_leaf):
                link = self.leaf_uplink(leaf, up)
                out.append(link)
                out.append(link.reversed())
        if self.tier == FAT_TREE:
            for spine in range(self.num_spines):
                for up in range(self.uplinks_per_spine):
                    link = self.spine_uplink(spine, up)
                    out.append(link)
                    out.append(link.reversed())
        return out

    def switch_links(self) -> list[LinkId]:
        """Directed switch-to-switch edges (the fabric core, both directions)."""
        return [
            l
            for l in self.links()
            if not l.src.startswith("h") and not l.dst.startswith("h")
        ]


def _check_positive(**counts: int) -> None:
    for name, value in counts.items():
        if value < 1:
            raise ValueError(f"{name} must be >= 1, got {value}")


def build_leaf_spine(
    leaves: int,
    spines: int,
    hosts_per_leaf: int,
    capacity: float,
    latency: float,
    parallel_links: int = 1,
) -> Topology:
    """Construct a two-tier fabric: every leaf wired to every spine.

    ``parallel_links`` cables connect each leaf-spine pair; uplink indices are
    flattened as ``spine * parallel_links + cable``.
    """
    _check_positive(
        leaves=leaves,
        spines=spines,
        hosts_per_leaf=hosts_per_leaf,
        parallel_links=parallel_links,
    )
    if spines * parallel_links > MAX_UPLINKS:
        raise ValueError(
            f"{spines * parallel_links} uplinks per leaf exceeds the "
            f"{MAX_UPLINKS}-uplink limit of one-byte hop labels"
        )
    return Topology(
        tier=LEAF_SPINE,
        num_leaves=leaves,
        num_spines=spines,
        num_cores=0,
        hosts_per_leaf=hosts_per_leaf,
        link_capacity=capacity,
        link_latency=latency,
        parallel_links=parallel_links,
    )


def build_fat_tree(
    leaves: int,
    spines: int,
    cores: int,
    hosts_per_leaf: int,
    parallel_links: int,
    capacity: float,
    latency: float,
) -> Topology:
    """Construct a three-tier folded CLOS.

    Leaves and spines split into ``p = sqrt(leaves * spines / cores)`` pods,
    which is the unique pod count giving every spine equal down- and up-facing
    port counts. Within a pod each leaf connects to each pod spine; the
    pod-index-``g`` spine of every pod connects to cores
    ``[g * cores_per_spine, (g + 1) * cores_per_spine)``.
    """
    _check_positive(
        leaves=leaves,
        spines=spines,
        cores=cores,
        hosts_per_leaf=hosts_per_leaf,
        parallel_links=parallel_links,
    )
    pods_sq, rem = divmod(leaves * spines, cores)
    pods = math.isqrt(pods_sq)
    if rem or pods * pods != pods_sq:
        raise ValueError(
            f"inconsistent pod arithmetic: leaves*spines/cores = "
            f"{leaves * spines}/{cores} is not a perfect square"
        )
    if leaves % pods or spines % pods:
        raise ValueError(
            f"leaves ({leaves}) and spines ({spines}) must divide evenly "
            f"into {pods} pods"
        )
    spines_per_pod = spines // pods
    if cores % spines_per_pod:
        raise ValueError(
            f"cores ({cores}) must split evenly across {spines_per_pod} "
            "spine positions per pod"
        )
    if spines_per_pod * parallel_links > MAX_UPLINKS:
        raise ValueError("leaf uplink count exceeds one-byte hop labels")
    if (cores // spines_per_pod) * parallel_links > MAX_UPLINKS:
        raise ValueError("spine uplink count exceeds one-byte hop labels")
    return Topology(
        tier=FAT_TREE,
        num_leaves=leaves,
        num_spines=spines,
        num_cores=cores,
        hosts_per_leaf=hosts_per_leaf,
        link_capacity=capacity,
        link_latency=latency,
        parallel_links=parallel_links,
        pods=pods,
    )


def enumerate_paths(topo: Topology, src_leaf: int, dst_leaf: int) -> tuple[int, ...]:
    """All equal-cost up/down path labels from one leaf to another.

    Two-tier (and intra-pod) paths pivot at one spine: one label per leaf
    uplink, low byte zero. Inter-pod paths pivot at one core: one label per
    (pod-spine, core) pair, with cable ordinals spread round-robin across the
    pairs so that byte-equal loads on the labels are byte-equal on every cable.
    """
    if src_leaf == dst_leaf:
        raise ValueError("rack-local traffic does not take a fabric path")
    for leaf in (src_leaf, dst_leaf):
        if not 0 <= leaf < topo.num_leaves:
            raise ValueError(f"unknown leaf {leaf}")
    par = topo.parallel_links
    if topo.tier == LEAF_SPINE or topo.pod_of_leaf(src_leaf) == topo.pod_of_leaf(
        dst_leaf
    ):
        return tuple(
            make_path_id(up) for up in range(topo.spines_per_pod * par)
        )
    paths = []
    for sp in range(topo.spines_per_pod):
        for k in range(topo.cores_per_spine):
            idx = sp * topo.cores_per_spine + k
            leaf_cable = idx % par
            spine_cable = (idx // par) % par
            paths.append(
                make_path_id(sp * par + leaf_cable, k * par + spine_cable)
            )
    return tuple(paths)


def resolve_hop(
    topo: Topology, at_switch: str, path_id: int, dst_host: int
) -> tuple[LinkId, int]:
    """One switch's forwarding decision: output link plus the swapped label.

    Up-hops read the high byte as the uplink index; down-hops are fixed by the
    destination, with the low byte (mod parallel cables) picking the cable so
    that data and its reverse-labelled acknowledgment share physical links.
    """
    dst_leaf = topo.leaf_of(dst_host)
    swapped = swap_path_id(path_id)
    par = topo.parallel_links

    if at_switch.startswith("leaf"):
        leaf = int(at_switch[4:])
        if leaf == dst_leaf:
            return LinkId(at_switch, host_name(dst_host), 0), swapped
        return topo.leaf_uplink(leaf, path_id >> 8), swapped

    if at_switch.startswith("spine"):
        spine = int(at_switch[5:])
        if topo.tier == LEAF_SPINE or topo.pod_of_leaf(dst_leaf) == topo.pod_of_spine(
            spine
        ):
            cable = (path_id & 0xFF) % par
            return LinkId(at_switch, leaf_name(dst_leaf), cable), swapped
        return topo.spine_uplink(spine, path_id >> 8), swapped

    if at_switch.startswith("core"):
        core = int(at_switch[4:])
        spine = topo.pod_spine(topo.pod_of_leaf(dst_leaf), topo.core_group(core))
        cable = (path_id & 0xFF) % par
        return LinkId(at_switch, spine_name(spine), cable), swapped

    raise InvalidRouteError(f"not a switch: {at_switch}")


def path_links(
    topo: Topology, src_host: int, dst_host: int, path_id: int
) -> tuple[list[LinkId], int]:
    """Walk a label from source to destination host.

    Returns the ordered directed links traversed and the label as the receiver
    sees it (after the last switch's swap). Rack-local pairs take the two-link
    host-leaf-host route regardless of label.
    """
    links = []
    at = leaf_name(topo.leaf_of(src_host))
    links.append(LinkId(host_name(src_host), at, 0))
    label = path_id
    for _ in range(8):  # longest route: leaf-spine-core-spine-leaf
        link, label = resolve_hop(topo, at, label, dst_host)
        links.append(link)
        if link.dst == host_name(dst_host):
            return links, label
        at = link.dst
    raise InvalidRouteError(f"label {path_id:#06x} does not reach h{dst_host}")


def ack_path_id(label_at_receiver: int) -> int:
    """Label the receiver stamps on acknowledgments: one more byte swap."""
    return swap_path_id(label_at_receiver)
