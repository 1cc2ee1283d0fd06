"""Communicated surrogate value functions: quadratics with optional cubic term.

A model represents ``W(p) = 0.5 p'Hp + g'p + sigma*||p - anchor||^3 + offset``.
Models are immutable values; messages move them between nodes by value.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DimensionMismatchError


@dataclass(frozen=True)
class ValueModel:
    H: np.ndarray
    g: np.ndarray
    sigma: float = 0.0
    anchor: np.ndarray = None  # type: ignore[assignment]
    offset: float = 0.0

    def __post_init__(self):
        H = np.atleast_2d(np.asarray(self.H, dtype=np.float64))
        g = np.asarray(self.g, dtype=np.float64).reshape(-1)
        anchor = (np.zeros(g.shape[0]) if self.anchor is None
                  else np.asarray(self.anchor, dtype=np.float64).reshape(-1))
        if H.shape != (g.shape[0], g.shape[0]) or anchor.shape != g.shape:
            raise DimensionMismatchError(
                f"model fields inconsistent: H{H.shape} g{g.shape} anchor{anchor.shape}")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "anchor", anchor)
        object.__setattr__(self, "sigma", float(self.sigma))
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def dim(self) -> int:
        return self.g.shape[0]

    def _check(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=np.float64).reshape(-1)
        if p.shape[0] != self.dim:
            raise DimensionMismatchError(f"point dim {p.shape[0]} != {self.dim}")
        return p

    def value(self, p) -> float:
        p = self._check(p)
        v = 0.5 * float(p @ self.H @ p) + float(self.g @ p) + self.offset
        if self.sigma > 0.0:
            v += self.sigma * float(np.linalg.norm(p - self.anchor)) ** 3
        return v

    def gradient(self, p) -> np.ndarray:
        p = self._check(p)
        grad = self.H @ p + self.g
        if self.sigma > 0.0:
            d = p - self.anchor
            grad = grad + 3.0 * self.sigma * np.linalg.norm(d) * d
        return grad

    def hessian(self, p) -> np.ndarray:
        """Hessian of the model; at ``p == anchor`` the cubic term contributes
        the zero limit of its symmetric part, i.e. the Hessian is plain H."""
        p = self._check(p)
        hess = self.H.copy()
        if self.sigma > 0.0:
            d = p - self.anchor
            nd = float(np.linalg.norm(d))
            if nd > 0.0:
                hess += 3.0 * self.sigma * (nd * np.eye(self.dim) + np.outer(d, d) / nd)
        return hess

    def shifted(self, delta_offset: float) -> "ValueModel":
        return replace(self, offset=self.offset + float(delta_offset))

    def to_wire(self) -> dict:
        return {
            "dim": self.dim,
            "H": [float(v) for v in self.H.reshape(-1)],
            "g": [float(v) for v in self.g],
            "sigma": float(self.sigma),
            "anchor": [float(v) for v in self.anchor],
            "offset": float(self.offset),
        }

    @classmethod
    def from_wire(cls, obj: dict) -> "ValueModel":
        dim = int(obj["dim"])
        return cls(
            H=np.asarray(obj["H"], dtype=np.float64).reshape(dim, dim),
            g=np.asarray(obj["g"], dtype=np.float64),
            sigma=float(obj["sigma"]),
            anchor=np.asarray(obj["anchor"], dtype=np.float64),
            offset=float(obj["offset"]),
        )


def zero_model(dim: int) -> ValueModel:
    """The all-zero model used to initialize unknown neighbor models."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return ValueModel(H=np.zeros((dim, dim)), g=np.zeros(dim), sigma=0.0,
                      anchor=np.zeros(dim), offset=0.0)


def build_model(value: float, grad, hess, anchor_point, sigma: float = 0.0) -> ValueModel:
    """Model matching (value, grad, hess) of a target function at ``anchor_point``.

    The Hessian is symmetrized defensively. The cubic term and its first two
    derivatives vanish at the anchor, so the matching holds for any sigma.
    """
    grad = np.asarray(grad, dtype=np.float64).reshape(-1)
    anchor = np.asarray(anchor_point, dtype=np.float64).reshape(-1)
    hess = np.atleast_2d(np.asarray(hess, dtype=np.float64))
    H = 0.5 * (hess + hess.T)
    g = grad - H @ anchor
    offset = float(value) - 0.5 * float(anchor @ H @ anchor) - float(g @ anchor)
    return ValueModel(H=H, g=g, sigma=sigma, anchor=anchor, offset=offset)


@dataclass(frozen=True)
class ModelMessage:
    """A model in flight on the directed tree edge sender -> receiver.

    ``sweep_tag`` colors forward-phase messages with the root event that
    produced them (-1 for backward-phase messages); ``seq`` is the per
    directed edge FIFO sequence number assigned by the simulator.
    """

    sender: int
    receiver: int
    model: ValueModel
    sweep_tag: int = -1
    seq: int = 0

    def to_wire(self) -> dict:
        obj = {"from": self.sender, "to": self.receiver,
               "sweep_tag": self.sweep_tag}
        obj.update(self.model.to_wire())
        return obj

    @classmethod
    def from_wire(cls, obj: dict) -> "ModelMessage":
        return cls(sender=int(obj["from"]), receiver=int(obj["to"]),
                   model=ValueModel.from_wire(obj),
                   sweep_tag=int(obj.get("sweep_tag", -1)))
