"""Tanh-sinh (double-exponential) quadrature on a finite interval.

The substitution ``x = (a+b)/2 + (b-a)/2 * tanh(pi/2 * sinh t)`` turns
integrable endpoint singularities of logarithmic-power type into a doubly
exponentially decaying integrand in ``t``; the trapezoidal rule in ``t`` then
converges geometrically in the number of halvings of the step.

Nodes are generated as exact offsets from the endpoints, so abscissae such as
``1 + 10**-40`` survive as exact binary numbers. Offsets below
``10**-node_floor_digits * (b - a)`` are not used; the mass omitted there is
estimated from the outermost nodes and added to the error estimate.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from typing import Any, Literal

import mpmath
from mpmath import mpf

from core.service.special_functions import as_real
from infrastructure.monitoring import increment, log_event
from interfaces.protocols import RealFunction
from interfaces.shared_types.errors import ConvergenceError, DomainError
from interfaces.shared_types.numeric_context import DEFAULT_CONTEXT, NumericContext
from interfaces.shared_types.results import QuadratureResult

LOGGER = logging.getLogger("translated.quadrature")

MIN_CONVERGED_LEVEL = 3

Side = Literal["a", "b", "mid"]


@dataclass(frozen=True, slots=True)
class QuadratureNode:
    """Abscissa, distance to its nearer endpoint, and trapezoid weight."""

    x: mpf
    offset: mpf
    weight: mpf
    side: Side


def node_horizon(node_floor_digits: int) -> mpf:
    """Largest ``t`` whose endpoint offset stays above ``10**-digits`` of the width."""

    return mpmath.asinh(node_floor_digits * mpmath.log(10) / mpmath.pi)


@functools.lru_cache(maxsize=256)
def level_nodes(
    a: mpf, b: mpf, level: int, prec: int, node_floor_digits: int
) -> tuple[QuadratureNode, ...]:
    """Nodes first used at ``level``.

    Level 0 places nodes at integer ``t``; level ``L`` adds the odd multiples
    of ``2**-L``.
    """

    with mpmath.workprec(prec):
        width = b - a
        horizon = node_horizon(node_floor_digits)
        step = mpmath.ldexp(mpf(1), -level)
        count = int(mpmath.floor(horizon / step))
        if level == 0:
            indices = range(0, count + 1)
        else:
            indices = range(1, count + 1, 2)
        quarter_pi = mpmath.pi / 4
        nodes: list[QuadratureNode] = []
        for i in indices:
            t = i * step
            u = mpmath.pi * mpmath.sinh(t)
            weight = width * quarter_pi * mpmath.cosh(t) / mpmath.cosh(u / 2) ** 2
            if i == 0:
                half = width / 2
                mid = mpmath.fadd(a, half, exact=True)
                nodes.append(QuadratureNode(mid, half, weight, "mid"))
                continue
            offset = width / (1 + mpmath.exp(u))
            near_a = mpmath.fadd(a, offset, exact=True)
            near_b = mpmath.fsub(b, offset, exact=True)
            nodes.append(QuadratureNode(near_a, offset, weight, "a"))
            nodes.append(QuadratureNode(near_b, offset, weight, "b"))
    return tuple(nodes)


def integrate_de(
    f: RealFunction,
    a: Any,
    b: Any,
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    min_level: int = MIN_CONVERGED_LEVEL,
) -> QuadratureResult:
    """Integrate ``f`` over ``[a, b]`` by level-refined tanh-sinh quadrature.

    Refinement stops once two successive levels differ by less than
    ``ctx.eps_eval`` (never before ``min_level``). ``f`` is called with exact
    abscissae under the context precision.

    Raises
    ------
    DomainError
        If ``a >= b``.
    ConvergenceError
        If ``ctx.max_quad_level`` is reached without convergence.
    """

    a = as_real(a, ctx)
    b = as_real(b, ctx)
    if not a < b:
        raise DomainError("integration interval must satisfy a < b")
    total = mpf(0)
    previous: mpf | None = None
    nodes_used = 0
    edge_offset: mpf | None = None
    edge_values: dict[str, mpf] = {}
    with ctx.workprec():
        for level in range(ctx.max_quad_level + 1):
            for node in level_nodes(a, b, level, ctx.prec, ctx.node_floor_digits):
                fx = f(node.x)
                total += node.weight * fx
                nodes_used += 1
                if node.side != "mid":
                    if edge_offset is None or node.offset < edge_offset:
                        edge_offset = node.offset
                        edge_values = {}
                    if node.offset == edge_offset:
                        edge_values[node.side] = abs(fx)
            estimate = mpmath.ldexp(total, -level)
            if previous is not None and level >= min_level:
                diff = abs(estimate - previous)
                log_event(
                    LOGGER,
                    "quadrature-level",
                    level=logging.DEBUG,
                    depth=level,
                    nodes=nodes_used,
                    diff=diff,
                )
                if diff < ctx.eps_eval:
                    truncation = (edge_offset or mpf(0)) * sum(
                        edge_values.values(), mpf(0)
                    )
                    increment("quadrature.converged")
                    return QuadratureResult(
                        value=estimate,
                        err_estimate=diff + truncation,
                        levels_used=level + 1,
                        nodes_used=nodes_used,
                    )
            previous = estimate
    increment("quadrature.failed")
    log_event(
        LOGGER,
        "quadrature-cap-exhausted",
        level=logging.WARNING,
        max_level=ctx.max_quad_level,
        nodes=nodes_used,
    )
    raise ConvergenceError(
        "tanh-sinh refinement did not converge within the level cap",
        max_level=ctx.max_quad_level,
        nodes=nodes_used,
    )


__all__ = [
    "MIN_CONVERGED_LEVEL",
    "QuadratureNode",
    "integrate_de",
    "level_nodes",
    "node_horizon",
]
