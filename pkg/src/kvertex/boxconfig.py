"""Torus-fixed box configurations: plane partitions with up to three legs,
their enumeration, and their exact characters.

A configuration is a finite order ideal ("core") inside the cube [0,B)^3
together with three leg partitions prescribing its asymptotics along the
coordinate axes. Box (a,b,c) contributes the monomial t1^a t2^b t3^c to
the character, so a single box at the origin has character 1. The leg over
partition lambda along axis i occupies the cells of lambda in the two
transverse coordinates, rows indexed by the lower-numbered transverse axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactalg import ONE, LaurentPoly, RatFunc

TRANSVERSE = ((1, 2), (2, 0), (0, 1))
# Transverse axis pairs per axis, lower-numbered first:
# axis 0 -> rows on axis 1, columns on axis 2, etc.
_AXPAIR = ((1, 2), (0, 2), (0, 1))


def in_leg(leg, axis, box):
    """Is the box inside the infinite cylinder of this leg along the axis?"""
    row_axis, col_axis = _AXPAIR[axis]
    r, s = box[row_axis], box[col_axis]
    return r < len(leg) and s < leg[r]


def in_any_leg(legs, box):
    return any(in_leg(legs[i], i, box) for i in range(3))


def leg_reach(legs):
    reach = 0
    for leg in legs:
        if leg:
            reach = max(reach, len(leg), leg[0])
    return reach


def minimal_core(legs, bound):
    """Union of the truncated leg cylinders: the unique smallest valid core."""
    core = set()
    for axis in range(3):
        leg = legs[axis]
        row_axis, col_axis = _AXPAIR[axis]
        for r in range(len(leg)):
            for s in range(leg[r]):
                for a in range(bound):
                    box = [0, 0, 0]
                    box[axis] = a
                    box[row_axis] = r
                    box[col_axis] = s
                    core.add(tuple(box))
    return frozenset(core)


@dataclass(frozen=True)
class BoxConfig:
    """A torus-fixed configuration: legs, stabilization bound, core boxes."""

    legs: tuple
    bound: int
    core: frozenset = field(compare=True)

    def sorted_core(self):
        return sorted(self.core)

    def leg_sizes(self):
        return sum(sum(leg) for leg in self.legs)

    def widen(self, extra=1):
        """The same configuration at stabilization bound + extra."""
        nb = self.bound + extra
        core = set(self.core)
        for axis in range(3):
            leg = self.legs[axis]
            row_axis, col_axis = _AXPAIR[axis]
            for r in range(len(leg)):
                for s in range(leg[r]):
                    for a in range(self.bound, nb):
                        box = [0, 0, 0]
                        box[axis] = a
                        box[row_axis] = r
                        box[col_axis] = s
                        core.add(tuple(box))
        return BoxConfig(self.legs, nb, frozenset(core))

    def to_json(self):
        return {
            "legs": [list(leg) for leg in self.legs],
            "bound": self.bound,
            "core": [list(b) for b in self.sorted_core()],
        }


def renormalized_volume(config):
    """|core| - B * (|lambda| + |mu| + |nu|); independent of the bound.

    Raises if the core is not stabilized: the two outermost slices along
    each axis must equal the leg cross-section exactly.
    """
    b = config.bound
    for axis in range(3):
        for plane in (b - 1, b - 2):
            if plane < 0:
                continue
            slice_boxes = {box for box in config.core if box[axis] == plane}
            expected = set()
            leg = config.legs[axis]
            row_axis, col_axis = _AXPAIR[axis]
            for r in range(len(leg)):
                for s in range(leg[r]):
                    box = [0, 0, 0]
                    box[axis] = plane
                    box[row_axis] = r
                    box[col_axis] = s
                    expected.add(tuple(box))
            if slice_boxes != expected:
                raise ValueError("bound too small")
    return len(config.core) - b * config.leg_sizes()


def min_volume(l1=(), l2=(), l3=()):
    """Minimal renormalized volume for the given legs (attained exactly by
    the union of leg cylinders)."""
    legs = (tuple(l1), tuple(l2), tuple(l3))
    b = leg_reach(legs) + 2
    core = minimal_core(legs, b)
    return len(core) - b * sum(sum(leg) for leg in legs)


def _predecessors(box):
    a, b, c = box
    if a:
        yield (a - 1, b, c)
    if b:
        yield (a, b - 1, c)
    if c:
        yield (a, b, c - 1)


def enumerate_configs(l1=(), l2=(), l3=(), n=0, bound=None):
    """All T-fixed configurations with the given legs and renormalized
    volume n, each exactly once, in canonical order.

    Depth-first extension of the minimal configuration by addable boxes in
    increasing lexicographic order; lexicographic order refines the product
    order on boxes, so every intermediate prefix is itself an order ideal
    and no configuration is produced twice.
    """
    legs = (tuple(l1), tuple(l2), tuple(l3))
    nmin = min_volume(*legs)
    extras = n - nmin
    if extras < 0:
        return
    if bound is None:
        bound = extras + leg_reach(legs) + 2
    base = minimal_core(legs, bound)
    limit = bound - 2

    core = set(base)

    def addable_after(last):
        out = []
        seen = set()
        candidates = [(0, 0, 0)]
        for box in core:
            a, b, c = box
            candidates.append((a + 1, b, c))
            candidates.append((a, b + 1, c))
            candidates.append((a, b, c + 1))
        for cand in candidates:
            if cand in seen or cand in core:
                continue
            seen.add(cand)
            if last is not None and cand <= last:
                continue
            if any(x >= limit for x in cand):
                continue
            if all(p in core for p in _predecessors(cand)):
                out.append(cand)
        out.sort()
        return out

    def rec(last, remaining):
        if remaining == 0:
            yield BoxConfig(legs, bound, frozenset(core))
            return
        for cand in addable_after(last):
            core.add(cand)
            yield from rec(cand, remaining - 1)
            core.remove(cand)

    yield from rec(None, extras)


def plane_partitions(n):
    """0-leg configurations of volume n (finite plane partitions)."""
    return enumerate_configs((), (), (), n)


def leg_diagram_poly(leg, axes):
    """sum over cells (r,s) of the partition of t'^r t''^s, where
    axes = (row variable index, column variable index)."""
    terms = []
    for r in range(len(leg)):
        for s in range(leg[r]):
            exps = [0, 0, 0, 0, 0]
            exps[axes[0]] = 2 * r
            exps[axes[1]] = 2 * s
            terms.append((1, tuple(exps)))
    return LaurentPoly.from_terms(terms)


def character(config):
    """Exact character of the structure sheaf at the fixed point: the core
    boxes plus a geometric tail per leg. Independent of the bound."""
    terms = [(1, (2 * a, 2 * b, 2 * c, 0, 0)) for (a, b, c) in config.core]
    rf = RatFunc.from_poly(LaurentPoly.from_terms(terms))
    for axis in range(3):
        leg = config.legs[axis]
        if not leg:
            continue
        qleg = leg_diagram_poly(leg, _AXPAIR[axis])
        tail = qleg * LaurentPoly.var(axis, 2 * config.bound)
        rf = rf + RatFunc(tail, ONE - LaurentPoly.var(axis))
    return rf


def enumerate_quot_pairs(m):
    """Ordered pairs of finite plane partitions with total volume m."""
    if m < 0:
        raise ValueError("volume must be nonnegative")
    parts = [list(plane_partitions(k)) for k in range(m + 1)]
    for k in range(m + 1):
        for c1 in parts[k]:
            for c2 in parts[m - k]:
                yield (c1, c2)
