"""End-to-end runs over shipped or user-supplied fixtures, plus JSON reports."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

from . import linalg
from .congruence import CongruenceReport, congruence_report, default_nn
from .correspondence import hecke_matrix, nice_correspondence
from .derham import BasisOverride, DeRhamData, build_raw_basis, read_override, select_jdr, symplectic_complete
from .errors import PrecisionTooLow
from .formsio import FormBasis, echelonize, load_fixture, required_precision, validate_dimensions
from .hodge import HodgeResult, build_lambda, solve_gauge, solve_hodge
from .series import LaurentSeries, frac_str

DISPLAY_TERMS = 10


@dataclass(frozen=True)
class RunConfig:
    level: int
    prime_p: int = 3
    precision: int | None = None
    n_N: int | None = None
    data_dir: str | None = None
    basis_override: str | None = None
    lenient_denominators: bool = False
    full: bool = False

    @property
    def nn(self) -> int:
        return default_nn(self.level) if self.n_N is None else self.n_N


@dataclass(frozen=True)
class Inputs:
    w2: FormBasis
    w12: FormBasis
    dims: dict
    override: BasisOverride | None


def _truncate(basis: FormBasis, prec: int | None) -> FormBasis:
    if prec is None or prec >= basis.prec:
        return basis
    return replace(basis, forms=tuple(f.truncate(prec) for f in basis.forms), prec=prec)


def load_inputs(cfg: RunConfig) -> Inputs:
    N = cfg.level
    w2 = echelonize(_truncate(load_fixture(N, 2, "plus", cfg.data_dir), cfg.precision))
    w12 = echelonize(_truncate(load_fixture(N, 12, "plus", cfg.data_dir), cfg.precision))
    dims = validate_dimensions(w2, w12)
    need = required_precision(N, cfg.prime_p, len(w2), len(w12), cfg.nn)
    have = min(w2.prec, w12.prec)
    if have < need:
        raise PrecisionTooLow(f"fixtures known to O(q^{have}); the pipeline needs {need}",
                              operation="load_inputs", datum=have)
    dims = dict(dims, required_precision=need, precision=have)
    override = read_override(cfg.basis_override) if cfg.basis_override else None
    return Inputs(w2, w12, dims, override)


def run_basis(cfg: RunConfig, inputs: Inputs | None = None) -> tuple[Inputs, DeRhamData]:
    inputs = inputs or load_inputs(cfg)
    j = select_jdr(inputs.w2, inputs.w12)
    raw = build_raw_basis(inputs.w2, inputs.w12, j)
    data = symplectic_complete(raw, inputs.override.matrix if inputs.override else None)
    return inputs, data


def run_hodge(cfg: RunConfig, inputs: Inputs | None = None) -> tuple[DeRhamData, HodgeResult]:
    inputs, data = run_basis(cfg, inputs)
    orientation = inputs.override.hecke_orientation if inputs.override else "standard"
    T = hecke_matrix(data, cfg.prime_p, orientation)
    Z = nice_correspondence(T)
    gauge = solve_gauge(data, Z)
    return data, solve_hodge(gauge, data, inputs.w12, data.j_dR, T, Z)


def run_congruence(cfg: RunConfig, inputs: Inputs | None = None) -> CongruenceReport:
    inputs, data = run_basis(cfg, inputs)
    full = echelonize(_truncate(load_fixture(cfg.level, 2, "full", cfg.data_dir), cfg.precision))
    return congruence_report(data, full, inputs.w2, cfg.nn, cfg.lenient_denominators)


# -- reports --------------------------------------------------------------------

def _series(f: LaurentSeries, full: bool) -> dict:
    return f.to_json(None if full else DISPLAY_TERMS)


def _vec(v) -> list[str]:
    return [frac_str(Fraction(x)) for x in v]


def basis_report(cfg: RunConfig, inputs: Inputs, data: DeRhamData) -> dict:
    return {
        "command": "basis",
        "level": cfg.level,
        "genus": data.genus,
        "d": inputs.dims["d"],
        "dimensions": inputs.dims,
        "j_dR": data.j_dR,
        "f_dR": _series(data.f_dR, cfg.full),
        "raw_cup_matrix": linalg.fmt(data.raw_cup),
        "raw_cup_det": frac_str(linalg.det(data.raw_cup)),
        "change_of_basis": linalg.fmt(data.change_of_basis),
        "cup_matrix": linalg.fmt(data.cup_matrix),
        "basis_source": "override" if inputs.override else "default",
        "symplectic_basis": [_series(w, cfg.full) for w in data.omegas],
    }


def hodge_report(cfg: RunConfig, inputs: Inputs, data: DeRhamData, res: HodgeResult) -> dict:
    rep = basis_report(cfg, inputs, data)
    rep["command"] = "hodge"
    lam = build_lambda(data, res.Z)
    g = res.gauge
    rep.update({
        "prime_p": cfg.prime_p,
        "hecke_orientation": inputs.override.hecke_orientation if inputs.override else "standard",
        "T_p": linalg.fmt(res.T_p.entries),
        "Z": linalg.fmt(res.Z.entries),
        "Z_antisymmetric": res.Z.antisymmetric,
        "lambda": [[_series(x, cfg.full) for x in row] for row in lam],
        "psi": {
            "a": [_series(x, cfg.full) for x in g.a],
            "b": [_series(x, cfg.full) for x in g.b],
            "c": _series(g.c, cfg.full),
        },
        "b_fil": _vec(res.b_fil),
        "beta_fil": _vec(res.beta_fil),
        "gamma_fil_coeffs": _vec(res.gamma_fil_coeffs),
        "gamma_fil_series": _series(res.gamma_fil_series, cfg.full),
        "alpha_fil": _vec([0] * (2 * data.genus)),
        "max_pole_a": res.max_pole_a,
        "pole_bound": data.genus + data.j_dR - 1,
        "equations": res.equations,
    })
    return rep


def congruence_report_json(cfg: RunConfig, rep: CongruenceReport) -> dict:
    return {
        "command": "congruence",
        "level": rep.level,
        "n_N": rep.n_N,
        "window_start": rep.window_start,
        "rows": {"A1": rep.rows_A1, "A2": rep.rows_A2, "A3": rep.rows_A3},
        "corank_A1A2": rep.corank_A1A2,
        "corank_A1A3": rep.corank_A1A3,
        "difference": rep.difference,
        "skipped_rows": [list(map(str, s)) for s in rep.skipped_rows],
        "summary": rep.summary(),
    }


def data_path(name: str) -> Path:
    from .formsio import default_data_dir
    return default_data_dir() / name
