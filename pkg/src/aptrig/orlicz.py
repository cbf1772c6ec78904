"""Musielak-Orlicz sequence norms of coefficient sequences.

The norm of a nonnegative magnitude sequence {a_k} is the dual supremum

    sup { sum_k gamma_k a_k : sum_k M*_k(gamma_k) <= 1 },

where M*_k is the Young conjugate of the Orlicz function attached to index k.
Production code evaluates it through the equivalent one-dimensional form

    inf_{t > 0} (1 + sum_k M_k(t a_k)) / t,

whose objective is unimodal in t (the numerator is convex and increasing).
Exactly-linear members are split off analytically: they contribute
slope * a_k and the infimum runs over the remaining members only.  A
brute-force maximizer of the defining supremum (`dual_sup_oracle`) is kept
as an independent cross-check of the identity.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import InvalidFamilyError, OrliczRangeError, UnsupportedSizeError
from .signal import APPolynomial

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_T_CAP_HI = 1e13
_T_CAP_LO = 1e-14
_CONVEXITY_TOL = 1e-12


# ---------------------------------------------------------------------------
# Orlicz functions
# ---------------------------------------------------------------------------

class OrliczFunction:
    """Nondecreasing convex M with M(0) = 0 and M(t) -> infinity."""

    kind = "abstract"

    def __call__(self, u):
        raise NotImplementedError

    @property
    def exact_slope(self) -> float | None:
        """Slope s if M(u) = s*u everywhere, else None."""
        return None

    @property
    def tail_slope(self) -> float:
        """lim M(u)/u for u -> infinity (may be inf)."""
        return math.inf

    def conjugate(self) -> "ConjugateFunction":
        return ConjugateFunction(self)

    def validate(self) -> None:
        pass

    def config(self) -> dict:
        raise NotImplementedError


class Linear(OrliczFunction):
    """M(u) = u; together with the box dual set this yields the l1 norm."""

    kind = "linear"

    def __call__(self, u):
        return np.asarray(u, dtype=float)

    @property
    def exact_slope(self) -> float:
        return 1.0

    @property
    def tail_slope(self) -> float:
        return 1.0

    def config(self) -> dict:
        return {"kind": "linear"}


class PowerScaled(OrliczFunction):
    """M(u) = c * u**p with p >= 1 and c > 0."""

    kind = "power_scaled"

    def __init__(self, c: float, p: float):
        if not (p >= 1.0):
            raise InvalidFamilyError("power exponent must satisfy p >= 1")
        if not (c > 0.0):
            raise InvalidFamilyError("power scale must be positive")
        self.c = float(c)
        self.p = float(p)

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        return self.c * u ** self.p

    @property
    def exact_slope(self) -> float | None:
        return self.c if self.p == 1.0 else None

    @property
    def tail_slope(self) -> float:
        return self.c if self.p == 1.0 else math.inf

    def config(self) -> dict:
        return {"kind": "power_scaled", "c": self.c, "p": self.p}


class StepanetsPower(PowerScaled):
    """The normalized power function whose Orlicz norm is the plain lp norm.

    M(u) = u**p * (p**(-1/p) * q**(-1/q))**p with q the conjugate exponent.
    """

    kind = "stepanets_power"

    def __init__(self, p: float):
        if not (p > 1.0):
            raise InvalidFamilyError("lp-reduction power needs p > 1")
        q = p / (p - 1.0)
        super().__init__((p ** (-1.0 / p) * q ** (-1.0 / q)) ** p, p)

    def config(self) -> dict:
        return {"kind": "stepanets_power", "p": self.p}


class CustomTabulated(OrliczFunction):
    """Convex piecewise-linear M given by (u, M(u)) knots, linear tail."""

    kind = "custom_tabulated"

    def __init__(self, points: Sequence[Sequence[float]]):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise InvalidFamilyError("tabulated function needs >= 2 (u, M) pairs")
        us, ms = pts[:, 0], pts[:, 1]
        if us[0] != 0.0 or ms[0] != 0.0:
            raise InvalidFamilyError("tabulated function must start at (0, 0)")
        if not np.all(np.diff(us) > 0):
            raise InvalidFamilyError("tabulated grid must be strictly increasing")
        if np.any(ms < 0) or np.any(np.diff(ms) < -_CONVEXITY_TOL):
            raise InvalidFamilyError("tabulated function must be nonnegative and nondecreasing")
        slopes = np.diff(ms) / np.diff(us)
        if np.any(np.diff(slopes) < -_CONVEXITY_TOL):
            raise InvalidFamilyError("tabulated function must be convex")
        if slopes[-1] <= 0:
            raise InvalidFamilyError("tabulated function must grow at the tail")
        self.us = us
        self.ms = ms
        self.slopes = slopes

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        inner = np.interp(u, self.us, self.ms)
        tail = self.ms[-1] + self.slopes[-1] * (u - self.us[-1])
        return np.where(u <= self.us[-1], inner, tail)

    @property
    def tail_slope(self) -> float:
        return float(self.slopes[-1])

    def config(self) -> dict:
        return {"kind": "custom_tabulated",
                "points": [[float(u), float(m)] for u, m in zip(self.us, self.ms)]}


def orlicz_function_from_config(cfg: Mapping) -> OrliczFunction:
    kind = cfg.get("kind")
    if kind == "linear":
        return Linear()
    if kind == "power_scaled":
        return PowerScaled(float(cfg["c"]), float(cfg["p"]))
    if kind == "stepanets_power":
        return StepanetsPower(float(cfg["p"]))
    if kind == "custom_tabulated":
        return CustomTabulated(cfg["points"])
    raise InvalidFamilyError(f"unknown Orlicz function kind: {kind!r}")


# ---------------------------------------------------------------------------
# Young conjugates
# ---------------------------------------------------------------------------

class ConjugateFunction:
    """M*(v) = sup_u (u v - M(u)); +inf beyond the tail slope of M."""

    def __init__(self, source: OrliczFunction):
        self.source = source
        s = source.tail_slope
        self.v_max: float | None = None if math.isinf(s) else float(s)

    def __call__(self, v):
        v = np.asarray(v, dtype=float)
        out = self._finite_part(v)
        if self.v_max is not None:
            out = np.where(v > self.v_max * (1.0 + 1e-15), np.inf, out)
        return out if out.shape else float(out)

    def _finite_part(self, v: np.ndarray) -> np.ndarray:
        src = self.source
        if isinstance(src, Linear):
            return np.zeros(v.shape)
        if isinstance(src, PowerScaled):
            if src.p == 1.0:
                return np.zeros(v.shape)
            q = src.p / (src.p - 1.0)
            coef = (src.c * src.p) ** (-q / src.p) / q
            with np.errstate(over="ignore"):
                return coef * v ** q
        if isinstance(src, CustomTabulated):
            # piecewise-linear M: the supremum is attained at a knot
            vals = np.multiply.outer(v, src.us) - src.ms
            return np.maximum(vals.max(axis=-1), 0.0)
        raise InvalidFamilyError(f"no conjugate rule for kind {src.kind!r}")

    def inverse(self, budget: float) -> float:
        """Largest v with M*(v) <= budget (exact per kind)."""
        b = max(float(budget), 0.0)
        src = self.source
        if isinstance(src, Linear) or (isinstance(src, PowerScaled) and src.p == 1.0):
            return self.v_max
        if isinstance(src, PowerScaled):
            q = src.p / (src.p - 1.0)
            coef = (src.c * src.p) ** (-q / src.p) / q
            return (b / coef) ** (1.0 / q)
        if isinstance(src, CustomTabulated):
            # M* is the knot-max of linear functions, so the sublevel set is
            # an intersection of half lines
            v = float(np.min((b + src.ms[1:]) / src.us[1:]))
            return min(v, self.v_max)
        raise InvalidFamilyError(f"no conjugate rule for kind {src.kind!r}")

    def argmax_gain(self, a: float, mu: float, cap: float) -> float:
        """argmax over [0, cap] of gamma*a - mu*M*(gamma); exact per kind."""
        src = self.source
        if isinstance(src, Linear) or (isinstance(src, PowerScaled) and src.p == 1.0):
            return min(self.v_max, cap)
        if isinstance(src, PowerScaled):
            q = src.p / (src.p - 1.0)
            coef = (src.c * src.p) ** (-q / src.p) / q
            if a <= 0.0:
                return 0.0
            stat = (a / (mu * coef * q)) ** (1.0 / (q - 1.0))
            return min(stat, cap)
        if isinstance(src, CustomTabulated):
            # gain is piecewise linear in gamma: check the slope knots and cap
            cand = np.concatenate([[0.0], src.slopes[src.slopes <= cap], [cap]])
            with np.errstate(invalid="ignore"):
                gains = cand * a - mu * np.asarray(self(cand), dtype=float)
            gains = np.where(np.isnan(gains), -np.inf, gains)
            return float(cand[int(np.argmax(gains))])
        raise InvalidFamilyError(f"no conjugate rule for kind {src.kind!r}")


def conjugate(M: OrliczFunction) -> ConjugateFunction:
    """Young conjugate with closed forms for the preset kinds."""
    return M.conjugate()


def conjugate_numeric(M: OrliczFunction, v: float, u_hint: float = 1.0) -> float:
    """Numeric sup_u (u v - M(u)) on a geometric u-grid plus golden refinement.

    Kept as an independent probe of the closed-form conjugates.
    """
    grid = u_hint * np.geomspace(1e-10, 1e10, 401)
    gains = grid * v - np.asarray(M(grid), dtype=float)
    j = int(np.argmax(gains))
    lo = grid[max(j - 1, 0)]
    hi = grid[min(j + 1, len(grid) - 1)]

    def g(u):
        return u * v - float(M(u))

    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    g1, g2 = g(x1), g(x2)
    for _ in range(90):
        if g1 > g2:
            hi, x2, g2 = x2, x1, g1
            x1 = hi - _GOLDEN * (hi - lo)
            g1 = g(x1)
        else:
            lo, x1, g1 = x1, x2, g2
            x2 = lo + _GOLDEN * (hi - lo)
            g2 = g(x2)
    return max(float(gains[j]), g(0.5 * (lo + hi)), 0.0)


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrliczFamily:
    """Index-dependent sequence of Orlicz functions: default plus overrides."""

    default: OrliczFunction
    overrides: Mapping[int, OrliczFunction] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "overrides",
                           {int(k): v for k, v in self.overrides.items()})
        if not self.label:
            object.__setattr__(self, "label", self.default.kind)
        self.default.validate()
        for member in self.overrides.values():
            member.validate()

    def member(self, k: int) -> OrliczFunction:
        return self.overrides.get(int(k), self.default)

    @staticmethod
    def l1(label: str = "l1") -> "OrliczFamily":
        return OrliczFamily(Linear(), {}, label)

    @staticmethod
    def lp(p: float, label: str = "") -> "OrliczFamily":
        return OrliczFamily(StepanetsPower(p), {}, label or f"lp[p={p:g}]")

    @staticmethod
    def from_config(cfg) -> "OrliczFamily":
        if isinstance(cfg, (str, Path)):
            text = str(cfg)
            if text.strip().startswith("{"):
                cfg = json.loads(text)
            else:
                cfg = json.loads(Path(cfg).read_text(encoding="utf-8"))
        default = orlicz_function_from_config(cfg["default"])
        overrides = {int(k): orlicz_function_from_config(v)
                     for k, v in cfg.get("overrides", {}).items()}
        return OrliczFamily(default, overrides, cfg.get("label", ""))

    def to_config(self) -> dict:
        out = {"default": self.default.config(), "label": self.label}
        if self.overrides:
            out["overrides"] = {str(k): v.config() for k, v in self.overrides.items()}
        return out


# ---------------------------------------------------------------------------
# Norm engine
# ---------------------------------------------------------------------------

def _as_index_value_arrays(mags: Mapping[int, float]) -> tuple[list[int], np.ndarray]:
    ks = sorted(int(k) for k in mags)
    vals = np.asarray([float(mags[k]) for k in ks], dtype=float)
    if np.any(vals < 0) or not np.all(np.isfinite(vals)):
        raise ValueError("magnitudes must be finite and nonnegative")
    return ks, vals


def sequence_norm_batch(indices: Sequence[int], mags: np.ndarray,
                        family: OrliczFamily, iters: int = 90) -> np.ndarray:
    """Orlicz norms of the rows of a (batch, index) magnitude matrix.

    The search for the scalar infimum runs in log-t with a fixed iteration
    count, so the whole batch shares one vectorized golden-section sweep.
    """
    X = np.asarray(mags, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    H, K = X.shape
    if K != len(indices):
        raise ValueError("index list does not match magnitude columns")
    if np.any(X < 0) or not np.all(np.isfinite(X)):
        raise ValueError("magnitudes must be finite and nonnegative")
    members = [family.member(k) for k in indices]

    # the norm is absolutely homogeneous: normalize each row to max 1 so the
    # scalar search is well conditioned for any input scale
    row_scale = X.max(axis=1)
    safe_scale = np.where(row_scale > 0.0, row_scale, 1.0)
    X = X / safe_scale[:, None]

    def finish(total: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore"):
            result = np.where(row_scale > 0.0, row_scale * total, 0.0)
        if not np.all(np.isfinite(result)):
            bad_row = int(np.argmax(~np.isfinite(result)))
            bad_col = int(np.argmax(X[bad_row]))
            raise OrliczRangeError(indices[bad_col])
        return result

    lin_cols = [j for j, m in enumerate(members) if m.exact_slope is not None]
    non_cols = [j for j, m in enumerate(members) if m.exact_slope is None]
    base = np.zeros(H)
    for j in lin_cols:
        base += members[j].exact_slope * X[:, j]
    if not non_cols:
        return finish(base)

    Xn = X[:, non_cols]
    ms = [members[j] for j in non_cols]
    tails = np.asarray([m.tail_slope for m in ms])
    active = Xn.max(axis=1) > 0.0

    # shared members evaluate on one column block instead of per column
    col_groups: dict[int, list[int]] = {}
    for j, m in enumerate(ms):
        col_groups.setdefault(id(m), []).append(j)
    grouped = [(ms[cols[0]], np.asarray(cols)) for cols in col_groups.values()]

    def F(t: np.ndarray) -> np.ndarray:
        g = np.zeros(H)
        for m, cols in grouped:
            g += np.asarray(m(t[:, None] * Xn[:, cols]), dtype=float).sum(axis=1)
        return (1.0 + g) / t

    with np.errstate(all="ignore"):
        safe_max = np.where(active, Xn.max(axis=1), 1.0)
        t_lo = 1.0 / (Xn.sum(axis=1) + 1.0)
        t_hi = np.maximum(K / safe_max, 2.0 * t_lo)
        for _ in range(60):
            grow = (F(t_hi) <= F(t_hi / 2.0)) & (t_hi < _T_CAP_HI) & active
            if not grow.any():
                break
            t_hi = np.where(grow, t_hi * 4.0, t_hi)
        for _ in range(60):
            grow = (F(t_lo) <= F(t_lo * 2.0)) & (t_lo > _T_CAP_LO) & active
            if not grow.any():
                break
            t_lo = np.where(grow, t_lo / 4.0, t_lo)

        lo = np.log(t_lo)
        hi = np.log(t_hi)
        x1 = hi - _GOLDEN * (hi - lo)
        x2 = lo + _GOLDEN * (hi - lo)
        f1 = F(np.exp(x1))
        f2 = F(np.exp(x2))
        for _ in range(iters):
            m = f1 < f2
            hi = np.where(m, x2, hi)
            lo = np.where(m, lo, x1)
            x1n = np.where(m, hi - _GOLDEN * (hi - lo), x2)
            x2n = np.where(m, x1, lo + _GOLDEN * (hi - lo))
            fe = F(np.exp(np.where(m, x1n, x2n)))
            f1, f2 = np.where(m, fe, f2), np.where(m, f1, fe)
            x1, x2 = x1n, x2n
        val = np.minimum(np.minimum(f1, f2), F(np.exp(0.5 * (lo + hi))))

        # rows still descending at the cap approach a linear-tail asymptote
        capped = active & (t_hi >= _T_CAP_HI) & (F(t_hi) <= F(t_hi / 2.0))
        if capped.any():
            contrib = np.where(Xn > 0, Xn * tails, 0.0)
            asym = contrib.sum(axis=1)
            val = np.where(capped & np.isfinite(asym), np.minimum(val, asym), val)

    val = np.where(active, val, 0.0)
    return finish(base + val)


def sequence_norm(mags: Mapping[int, float], family: OrliczFamily) -> float:
    """Orlicz norm of an arbitrary nonnegative magnitude sequence."""
    if not mags:
        return 0.0
    ks, vals = _as_index_value_arrays(mags)
    return float(sequence_norm_batch(ks, vals[None, :], family)[0])


def orlicz_norm(f: APPolynomial, family: OrliczFamily) -> float:
    """Orlicz norm of a signal, i.e. of its coefficient magnitude sequence."""
    return sequence_norm(f.magnitudes(), family)


def centered_norm(f: APPolynomial, family: OrliczFamily) -> float:
    """Norm of the signal with its mean coefficient removed."""
    mags = {k: v for k, v in f.magnitudes().items() if k != 0}
    return sequence_norm(mags, family)


# ---------------------------------------------------------------------------
# Dual-side brute force
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DualWeights:
    """A feasible dual sequence and its budget residual sum M*_k(gamma_k)."""

    gammas: Mapping[int, float]
    residual: float

    @property
    def feasible(self) -> bool:
        return self.residual <= 1.0 + 1e-9


def _cap_by_budget(conj: ConjugateFunction) -> float:
    if conj.v_max is not None:
        return conj.v_max
    return float(conj.inverse(1.0 + 1e-12))


def dual_sup_oracle(mags: Mapping[int, float] | APPolynomial, family: OrliczFamily,
                    support_limit: int = 6, seed: int = 0, starts: int = 64,
                    return_weights: bool = False):
    """Brute-force value of the defining dual supremum.

    Strategy: a stationarity search on the budget multiplier (bisection on mu
    with per-coordinate concave maximization), plus `starts` random feasible
    boundary points improved by pairwise budget exchanges.  Independent of the
    scalar-infimum path used by `sequence_norm`.
    """
    if isinstance(mags, APPolynomial):
        mags = mags.magnitudes()
    items = [(int(k), float(v)) for k, v in sorted(mags.items()) if v > 0.0]
    if len(items) > support_limit:
        raise UnsupportedSizeError(
            f"support {len(items)} exceeds oracle limit {support_limit}")
    if not items:
        return (0.0, DualWeights({}, 0.0)) if return_weights else 0.0

    ks = [k for k, _ in items]
    a = np.asarray([v for _, v in items])
    K = len(ks)
    conjs = [family.member(k).conjugate() for k in ks]
    caps = np.asarray([_cap_by_budget(c) for c in conjs])
    rng = np.random.default_rng(seed)

    def budget(g: np.ndarray) -> float:
        return float(sum(float(c(gi)) for c, gi in zip(conjs, g)))

    def shrink_to_feasible(g: np.ndarray) -> np.ndarray:
        g = np.minimum(g, caps)
        if budget(g) <= 1.0 + 1e-12:
            return g
        lo, hi = 0.0, 1.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if budget(mid * g) <= 1.0:
                lo = mid
            else:
                hi = mid
        return lo * g

    candidates: list[np.ndarray] = []

    # stationarity search on the budget multiplier
    if budget(caps) <= 1.0 + 1e-12:
        candidates.append(caps.copy())
    else:
        def gammas_at(mu: float) -> np.ndarray:
            return np.asarray([conjs[i].argmax_gain(a[i], mu, caps[i])
                               for i in range(K)])
        mu_lo, mu_hi = 1e-12, 1e12
        for _ in range(120):
            mid = math.sqrt(mu_lo * mu_hi)
            if budget(gammas_at(mid)) > 1.0:
                mu_lo = mid
            else:
                mu_hi = mid
            if mu_hi / mu_lo < 1.0 + 1e-13:
                break
        candidates.append(shrink_to_feasible(gammas_at(mu_hi)))

    # random boundary points
    for _ in range(starts):
        candidates.append(shrink_to_feasible(caps * rng.uniform(0.05, 1.0, size=K)))

    def value(g: np.ndarray) -> float:
        return float(g @ a)

    candidates.sort(key=value, reverse=True)
    polished = [_pairwise_polish(g, a, conjs, caps, budget) for g in candidates[:3]]
    best = max(candidates + polished, key=value)
    best = shrink_to_feasible(best)
    if return_weights:
        return value(best), DualWeights(dict(zip(ks, best.tolist())), budget(best))
    return value(best)


def _pairwise_polish(g: np.ndarray, a: np.ndarray, conjs, caps, budget) -> np.ndarray:
    """Reallocate dual budget between coordinate pairs while the value grows."""
    K = len(g)
    if K == 1:
        return np.asarray([min(caps[0], float(conjs[0].inverse(1.0)))])
    g = g.copy()
    for _ in range(8):
        improved = False
        for i in range(K):
            for j in range(i + 1, K):
                bi, bj = float(conjs[i](g[i])), float(conjs[j](g[j]))
                slack = max(0.0, 1.0 - budget(g) + bi + bj)

                def pair_value(theta: float) -> tuple[float, float, float]:
                    gi = min(caps[i], float(conjs[i].inverse(theta * slack)))
                    gj = min(caps[j], float(conjs[j].inverse((1.0 - theta) * slack)))
                    return gi * a[i] + gj * a[j], gi, gj

                lo, hi = 0.0, 1.0
                x1 = hi - _GOLDEN * (hi - lo)
                x2 = lo + _GOLDEN * (hi - lo)
                v1, v2 = pair_value(x1)[0], pair_value(x2)[0]
                for _ in range(40):
                    if v1 > v2:
                        hi, x2, v2 = x2, x1, v1
                        x1 = hi - _GOLDEN * (hi - lo)
                        v1 = pair_value(x1)[0]
                    else:
                        lo, x1, v1 = x1, x2, v2
                        x2 = lo + _GOLDEN * (hi - lo)
                        v2 = pair_value(x2)[0]
                v, gi, gj = pair_value(0.5 * (lo + hi))
                if v > g[i] * a[i] + g[j] * a[j] + 1e-12:
                    g[i], g[j] = gi, gj
                    improved = True
        if not improved:
            break
    return g


def young_violation(M: OrliczFunction, u_grid: np.ndarray, v_grid: np.ndarray) -> float:
    """max over the sample grid of u*v - M(u) - M*(v); should be <= ~0."""
    conj = M.conjugate()
    mu = np.asarray(M(u_grid), dtype=float)
    mv = np.asarray(conj(v_grid), dtype=float)
    gain = np.multiply.outer(u_grid, v_grid) - mu[:, None] - mv[None, :]
    return float(np.max(gain[np.isfinite(gain)]))
