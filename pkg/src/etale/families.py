"""Canonical example structures with deterministic ids."""
from __future__ import annotations

from .errors import InvalidParams, UnknownFamily
from .groupoids import TopGroupoid
from .order import chain, powerset_frame
from .semigroups import (InvSemigroup, partial_injections, semigroup_of_partial_bijections,
                         symmetric_inverse_monoid)
from .topology import FinTopSpace, discrete_space, indiscrete_space, sierpinski


def pair_groupoid(n: int) -> TopGroupoid:
    """Units ``1..n``, one arrow ``(i,j)`` from i to j, discrete topologies."""
    pts = [str(k) for k in range(1, n + 1)]
    arrows = {f"({a},{b})": (a, b) for a in pts for b in pts}
    name = {v: k for k, v in arrows.items()}
    m = {(x, y): name[arrows[x][0], arrows[y][1]]
         for x in arrows for y in arrows if arrows[x][1] == arrows[y][0]}
    return TopGroupoid(
        discrete_space(pts), discrete_space(list(arrows)),
        d={x: a for x, (a, _) in arrows.items()},
        r={x: b for x, (_, b) in arrows.items()},
        u={a: name[a, a] for a in pts},
        i={x: name[b, a] for x, (a, b) in arrows.items()},
        m=m, name=f"pair({n})")


def cyclic_group_groupoid(n: int, topology="discrete") -> TopGroupoid:
    """Z/n as a one-unit groupoid; arrows ``g0..g{n-1}`` with ``g0`` the identity."""
    gs = [f"g{k}" for k in range(n)]
    if topology == "discrete":
        G1 = discrete_space(gs)
    elif topology == "indiscrete":
        G1 = indiscrete_space(gs)
    else:
        raise InvalidParams(f"unknown topology {topology!r}")
    return TopGroupoid(
        discrete_space(["*"]), G1,
        d={g: "*" for g in gs}, r={g: "*" for g in gs}, u={"*": "g0"},
        i={f"g{k}": f"g{(-k) % n}" for k in range(n)},
        m={(f"g{a}", f"g{b}"): f"g{(a + b) % n}" for a in range(n) for b in range(n)},
        name=f"cyclic_group({n})" + ("" if topology == "discrete" else f"/{topology}"))


def unit_groupoid(X: FinTopSpace, name="") -> TopGroupoid:
    """Only identity arrows; the arrow space is a copy of ``X``."""
    ident = {x: x for x in X.points}
    return TopGroupoid(X, X, ident, ident, ident, ident, {(x, x): x for x in X.points},
                       name=name or "unit")


def action_groupoid(n: int, k: int) -> TopGroupoid:
    """Z/n acting on Z/k by rotation (requires k | n); arrow ``(x,gj)`` goes x -> x+j."""
    if n < 1 or k < 1 or n % k:
        raise InvalidParams(f"Z/{n} does not act on Z/{k} by rotation")
    pts = [str(x) for x in range(k)]
    arrows = {f"({x},g{j})": (x, j) for x in range(k) for j in range(n)}
    name = {v: a for a, v in arrows.items()}
    m = {}
    for a, (x, j) in arrows.items():
        for b, (y, l) in arrows.items():
            if (x + j) % k == y:
                m[a, b] = name[x, (j + l) % n]
    return TopGroupoid(
        discrete_space(pts), discrete_space(list(arrows)),
        d={a: str(x) for a, (x, _) in arrows.items()},
        r={a: str((x + j) % k) for a, (x, j) in arrows.items()},
        u={str(x): name[x, 0] for x in range(k)},
        i={a: name[(x + j) % k, (-j) % n] for a, (x, j) in arrows.items()},
        m=m, name=f"action({n},{k})")


def i2_without_swap() -> InvSemigroup:
    """The six partial injections of two points other than the swap.

    ``[1>2]`` and ``[2>1]`` are compatible but have no join here, so this
    semigroup is not complete.
    """
    pbs = [p for p in partial_injections(["1", "2"]) if p.id != "[1>2,2>1]"]
    return semigroup_of_partial_bijections(pbs, name="S6")


FAMILIES = {
    "pair": (pair_groupoid, (int,)),
    "cyclic_group": (cyclic_group_groupoid, (int,)),
    "cyclic_group_indiscrete": (lambda n: cyclic_group_groupoid(n, "indiscrete"), (int,)),
    "unit_groupoid": (unit_groupoid, (FinTopSpace,)),
    "action_groupoid": (action_groupoid, (int, int)),
    "discrete_space": (discrete_space, (int,)),
    "sierpinski": (sierpinski, ()),
    "indiscrete": (indiscrete_space, (int,)),
    "symmetric_inverse_monoid": (symmetric_inverse_monoid, (int,)),
    "i2_without_swap": (i2_without_swap, ()),
    "chain": (chain, (int,)),
    "powerset": (lambda n: powerset_frame([str(k) for k in range(1, n + 1)]), (int,)),
}

ALIASES = {"s6": "i2_without_swap", "sim": "symmetric_inverse_monoid", "discrete": "discrete_space",
           "cyclic": "cyclic_group", "unit": "unit_groupoid", "action": "action_groupoid"}


def generate_family(family: str, *params):
    family = ALIASES.get(family, family)
    if family not in FAMILIES:
        raise UnknownFamily(family)
    build, types = FAMILIES[family]
    if len(params) != len(types):
        raise InvalidParams(f"{family} takes {len(types)} parameter(s), got {len(params)}")
    args = []
    for p, t in zip(params, types):
        if t is int:
            try:
                p = int(p)
            except (TypeError, ValueError):
                raise InvalidParams(f"{family}: expected an integer, got {p!r}") from None
            if p < 0:
                raise InvalidParams(f"{family}: negative size {p}")
        elif not isinstance(p, t):
            raise InvalidParams(f"{family}: expected {t.__name__}, got {type(p).__name__}")
        args.append(p)
    return build(*args)
