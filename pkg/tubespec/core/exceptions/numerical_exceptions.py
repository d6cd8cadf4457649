"""Numerical failure exceptions.

These mark computations that were well posed but did not produce a
trustworthy answer: exhausted refinement sequences, eigensolvers that did
not converge, grids too coarse for the requested resolution.
"""

from typing import Any, Optional

from .domain_exceptions import DomainException


class NumericalError(DomainException):
    """Base exception for numerical failures."""

    pass


class NoConvergence(NumericalError):
    """A refinement sequence ended before its Cauchy criterion was met."""

    def __init__(
        self,
        stage: str,
        last_change: Optional[float] = None,
        steps: Optional[int] = None,
        message: Optional[str] = None,
        **kwargs: Any,
    ):
        if not message:
            message = f"{stage} did not converge"
            if steps is not None:
                message += f" after {steps} steps"
            if last_change is not None:
                message += f" (last change {last_change:.3e})"

        context = kwargs.pop("context", None) or {}
        context.update({"stage": stage, "last_change": last_change, "steps": steps})

        super().__init__(message, context=context, **kwargs)
        self.stage = stage
        self.last_change = last_change
        self.steps = steps


class IterationFailure(NumericalError):
    """An iterative eigensolver failed or returned large residuals."""

    def __init__(
        self,
        solver: str,
        residuals: Optional[list[float]] = None,
        message: Optional[str] = None,
        **kwargs: Any,
    ):
        if not message:
            message = f"{solver} failed"
            if residuals:
                message += f" (worst residual {max(residuals):.3e})"

        context = kwargs.pop("context", None) or {}
        context.update({"solver": solver, "residuals": residuals})

        super().__init__(message, context=context, **kwargs)
        self.solver = solver
        self.residuals = residuals


class GridTooCoarse(NumericalError):
    """The cross-section grid under-resolves the requested modes."""

    def __init__(self, axis: int, nodes: int, required: int, **kwargs: Any):
        message = (
            f"Cross-section axis {axis} has {nodes} nodes, "
            f"{required} are needed for the resolved modes"
        )
        context = kwargs.pop("context", None) or {}
        context.update({"axis": axis, "nodes": nodes, "required": required})
        super().__init__(message, context=context, **kwargs)
        self.axis = axis
        self.nodes = nodes
        self.required = required
