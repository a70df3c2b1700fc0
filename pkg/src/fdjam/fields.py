"""Rectangular grid sweeps of every scalar field, with CSV/JSON export.

Grids are row-major with y as the slow axis.  Fading sweeps derive one
counter-based stream per cell from (seed, cell index) so the values do not
depend on evaluation order, and exports carry every parameter needed to
regenerate them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .colluding import opt_jam, secrecy_ab
from .colluding_fading import _cond_prob_zero_array, secrecy_sample
from .errors import InvalidParameterError
from .geometry import LinkGains, SystemParams, gain_fields
from .montecarlo import MCConfig
from .pairwise_fading import cond_prob_zero_pair_array, secrecy_sample_pair

__all__ = [
    "GridSpec",
    "FieldGrid",
    "build_field",
    "build_region_grid",
    "build_optjam_grid",
    "grid_argmin",
    "grid_argmax",
    "write_csv",
    "read_csv",
    "write_json",
    "read_json",
]


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    step: float

    def __post_init__(self) -> None:
        if not self.step > 0:
            raise InvalidParameterError(f"step must be > 0, got {self.step}")
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise InvalidParameterError("grid needs x_min < x_max and y_min < y_max")

    @property
    def nx(self) -> int:
        return math.floor((self.x_max - self.x_min) / self.step + 1)

    @property
    def ny(self) -> int:
        return math.floor((self.y_max - self.y_min) / self.step + 1)

    def xs(self) -> np.ndarray:
        return self.x_min + self.step * np.arange(self.nx)

    def ys(self) -> np.ndarray:
        return self.y_min + self.step * np.arange(self.ny)


@dataclass
class FieldGrid:
    spec: GridSpec
    values: np.ndarray  # shape (ny, nx)
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.spec.ny, self.spec.nx):
            raise InvalidParameterError(
                f"values shape {self.values.shape} does not match grid ({self.spec.ny}, {self.spec.nx})"
            )


def _params_meta(params: SystemParams) -> dict:
    return {
        "p_t": params.p_t,
        "p_j": params.p_j,
        "rho": params.rho,
        "alpha": params.alpha,
        "delta": params.delta,
    }


def _cell_rng(seed: int, cell_index: int) -> np.random.Generator:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, cell_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def build_field(
    mode: str,
    params: SystemParams,
    grid: GridSpec,
    quantity: str = "secrecy",
    fading: bool = False,
    mc: MCConfig | None = None,
    pj_per_cell: str = "fixed",
) -> FieldGrid:
    """One scalar per grid cell.

    mode: "colluding" or "pairwise".
    quantity: "secrecy" (exact, or one fading draw per cell when
    fading=True) or "prob-zero" (per-cell Monte Carlo mean over the fading
    the link conditions on; needs mc; intended for coarse grids).
    pj_per_cell: "fixed" uses params.p_j everywhere; "opt" re-optimizes the
    colluding jamming power in every cell.
    """
    if mode not in ("colluding", "pairwise"):
        raise InvalidParameterError(f"unknown mode {mode!r}")
    if quantity not in ("secrecy", "prob-zero"):
        raise InvalidParameterError(f"unknown quantity {quantity!r}")
    if pj_per_cell not in ("fixed", "opt"):
        raise InvalidParameterError(f"unknown pj_per_cell {pj_per_cell!r}")
    if pj_per_cell == "opt" and mode != "colluding":
        raise InvalidParameterError("per-cell optimal jamming applies to colluding mode only")
    needs_mc = quantity == "prob-zero" or fading
    if needs_mc and mc is None:
        raise InvalidParameterError("fading or prob-zero sweeps need an MCConfig")

    xs, ys = grid.xs(), grid.ys()
    xm, ym = np.meshgrid(xs, ys)
    a_f, b_f = gain_fields(xm, ym, params.alpha)
    values = np.empty((grid.ny, grid.nx))

    if quantity == "secrecy" and not fading and pj_per_cell == "fixed":
        values = _static_secrecy_field(mode, params, a_f, b_f)
    else:
        for iy in range(grid.ny):
            for ix in range(grid.nx):
                g = LinkGains(a=float(a_f[iy, ix]), b=float(b_f[iy, ix]))
                cell = iy * grid.nx + ix
                p = params
                if pj_per_cell == "opt":
                    p = SystemParams(
                        p_t=params.p_t,
                        p_j=opt_jam(g, params.rho, params.p_t).p_j_opt,
                        rho=params.rho,
                        alpha=params.alpha,
                        delta=params.delta,
                    )
                values[iy, ix] = _cell_value(mode, quantity, fading, g, p, mc, cell)

    meta = {
        "mode": mode,
        "quantity": quantity,
        "fading": fading,
        "pj_per_cell": pj_per_cell,
        **_params_meta(params),
    }
    if mc is not None:
        meta["seed"] = mc.seed
        meta["n_samples"] = mc.n_samples
    return FieldGrid(spec=grid, values=values, meta=meta)


def _static_secrecy_field(mode: str, params: SystemParams, a_f: np.ndarray, b_f: np.ndarray) -> np.ndarray:
    """Vectorized exact secrecy; endpoint cells get their limit values."""
    p_t, p_j, rho = params.p_t, params.p_j, params.rho
    snr_main = p_t if rho == 0 else (0.0 if math.isinf(p_j) else p_t / (1.0 + rho * p_j))
    c_main = np.log1p(snr_main)

    def one_direction(ga: np.ndarray, gb: np.ndarray) -> np.ndarray:
        with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
            if math.isinf(p_j):
                snr_eve = np.zeros_like(ga)
            elif p_j == 0:
                snr_eve = ga * p_t
            else:
                snr_eve = ga * p_t / (1.0 + gb * p_j)
            snr_eve = np.where(np.isinf(ga), np.inf, snr_eve)
            out = np.maximum(0.0, (c_main - np.log1p(snr_eve)) / math.log(2.0))
        return np.where(np.isinf(ga), 0.0, out)

    s_ab = one_direction(a_f, b_f)
    if mode == "colluding":
        return s_ab
    return 0.5 * (s_ab + one_direction(b_f, a_f))


def _cell_value(
    mode: str,
    quantity: str,
    fading: bool,
    g: LinkGains,
    params: SystemParams,
    mc: MCConfig | None,
    cell: int,
) -> float:
    if quantity == "secrecy" and not fading:
        if mode == "colluding":
            return secrecy_ab(g, params)
        return 0.5 * (secrecy_ab(g, params) + secrecy_ab(g.swapped(), params))

    assert mc is not None
    rng = _cell_rng(mc.seed, cell)

    if quantity == "secrecy":
        # One fading realization of the unknown Eve-side coefficients; the
        # link-side coefficients stay at their means.
        c_t, d_t = -np.log1p(-rng.random(2))
        if mode == "colluding":
            return secrecy_sample(g, params, float(c_t), float(d_t))
        return secrecy_sample_pair(g, params, float(c_t), float(d_t))

    # prob-zero: average the conditional zero-secrecy probability over the
    # fading the link knows, in chunks sized by the MCConfig.
    total = 0.0
    done = 0
    while done < mc.n_samples:
        m = min(mc.chunk, mc.n_samples - done)
        if mode == "colluding":
            draws = -np.log1p(-rng.random((m, 2)))
            vals = _cond_prob_zero_array(g, params, draws[:, 0], draws[:, 1])
        else:
            draws = -np.log1p(-rng.random((m, 3)))
            vals = cond_prob_zero_pair_array(g, params, draws[:, 0], draws[:, 1], draws[:, 2])
        total += float(np.sum(vals))
        done += m
    return total / mc.n_samples


def build_region_grid(grid: GridSpec, rho: float, alpha: float = 2.0) -> FieldGrid:
    """Region index (1..4) per cell, vectorized."""
    xs, ys = grid.xs(), grid.ys()
    xm, ym = np.meshgrid(xs, ys)
    a_f, b_f = gain_fields(xm, ym, alpha)
    if rho == 0:
        # rho * a would be nan at the a = inf node; the sign is + everywhere
        s_pos = np.ones(a_f.shape, dtype=bool)
    else:
        s_pos = b_f - rho * a_f > 0
    small_a = a_f < 1.0
    values = np.where(s_pos, np.where(small_a, 1.0, 2.0), np.where(small_a, 3.0, 4.0))
    return FieldGrid(spec=grid, values=values, meta={"quantity": "region", "rho": rho, "alpha": alpha})


def build_optjam_grid(grid: GridSpec, params: SystemParams) -> FieldGrid:
    """Optimal colluding jamming power per cell."""
    xs, ys = grid.xs(), grid.ys()
    values = np.empty((grid.ny, grid.nx))
    for iy, y in enumerate(ys):
        for ix, x in enumerate(xs):
            a_f, b_f = gain_fields(np.asarray(x), np.asarray(y), params.alpha)
            g = LinkGains(a=float(a_f), b=float(b_f))
            values[iy, ix] = opt_jam(g, params.rho, params.p_t).p_j_opt
    meta = {"quantity": "opt-jam", **_params_meta(params)}
    return FieldGrid(spec=grid, values=values, meta=meta)


def _arg_best(fg: FieldGrid, best: float) -> tuple[float, float, float]:
    # Lexicographic (x, y) among exact ties; y is the slow axis, so scan
    # x-major by transposing the index order.
    xs, ys = fg.spec.xs(), fg.spec.ys()
    hits = np.argwhere(fg.values == best)
    order = np.lexsort((hits[:, 0], hits[:, 1]))  # sort by ix, then iy
    iy, ix = hits[order[0]]
    return float(xs[ix]), float(ys[iy]), float(best)


def grid_argmin(fg: FieldGrid) -> tuple[float, float, float]:
    """(x, y, value) of the smallest cell; ties break lexicographically by (x, y)."""
    return _arg_best(fg, float(np.min(fg.values)))


def grid_argmax(fg: FieldGrid) -> tuple[float, float, float]:
    """(x, y, value) of the largest cell; ties break lexicographically by (x, y)."""
    return _arg_best(fg, float(np.max(fg.values)))


def write_csv(fg: FieldGrid, path: str) -> None:
    """Rows are x,y,value with y varying slowest, full float round-trip."""
    xs, ys = fg.spec.xs(), fg.spec.ys()
    with open(path, "w") as fh:
        fh.write("x,y,value\n")
        for iy in range(fg.spec.ny):
            for ix in range(fg.spec.nx):
                fh.write(f"{xs[ix]:.17g},{ys[iy]:.17g},{fg.values[iy, ix]:.17g}\n")


def read_csv(path: str, spec: GridSpec) -> FieldGrid:
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    data = np.atleast_2d(data)
    if data.shape[0] != spec.nx * spec.ny:
        raise InvalidParameterError(
            f"csv has {data.shape[0]} rows, grid needs {spec.nx * spec.ny}"
        )
    values = data[:, 2].reshape(spec.ny, spec.nx)
    return FieldGrid(spec=spec, values=values)


def write_json(fg: FieldGrid, path: str) -> None:
    payload = {
        "grid": {
            "x_min": fg.spec.x_min,
            "x_max": fg.spec.x_max,
            "y_min": fg.spec.y_min,
            "y_max": fg.spec.y_max,
            "step": fg.spec.step,
        },
        "meta": fg.meta,
        "values": [[float(v) for v in row] for row in fg.values],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)


def read_json(path: str) -> FieldGrid:
    with open(path) as fh:
        payload = json.load(fh)
    spec = GridSpec(**payload["grid"])
    return FieldGrid(spec=spec, values=np.array(payload["values"]), meta=payload.get("meta", {}))
