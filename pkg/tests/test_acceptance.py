"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line (with the measured worst error and wall
time) that ``conftest.pytest_terminal_summary`` prints after the run.
"""
import subprocess
import sys
import time
import warnings

import numpy as np
import pytest

from conftest import random_stable, random_z
from penning_cs import fock
from penning_cs.expm import expm
from penning_cs.grid import default_grid, ladder_residual_fd, quadrature_moments
from penning_cs.ladder import commutator, commutator_table, energy, hamiltonian_residual
from penning_cs.model import PenningModel
from penning_cs.observables import coherent_moments, energy_mean, energy_variance
from penning_cs.spectral import lambda_reconstruction, propagator, unit_decomposition
from penning_cs.states import aocs_coefficients, phi0, phi_z
from penning_cs.trap import TrapParams, build_lambda, frequencies

RESULTS = []


class Report:
    """Times a criterion and records its outcome even when an assert fails."""

    def __init__(self, number, title, budget=None):
        self.number, self.title, self.budget = number, title, budget
        self.worst = {}

    def note(self, key, value):
        self.worst[key] = max(self.worst.get(key, 0.0), float(value))

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        over = self.budget is not None and elapsed >= self.budget
        ok = exc_type is None and not over
        detail = ", ".join(
            f"{k}={int(v)}" if v.is_integer() and v >= 1 else f"{k}={v:.2e}"
            for k, v in self.worst.items()
        )
        limit = f" (limit {self.budget:g}s)" if self.budget else ""
        RESULTS.append(
            f"{'PASS' if ok else 'FAIL'} criterion {self.number}: {self.title} "
            f"[{detail}] {elapsed:.2f}s{limit}"
        )
        if exc_type is None and over:
            pytest.fail(f"criterion {self.number} took {elapsed:.2f}s, limit {self.budget}s")
        return False


def test_criterion_1_spectrum():
    with Report(1, "reference frequencies and generic eigenvalues", budget=1.0) as rep:
        params = TrapParams(1.0, -0.5)
        w = frequencies(params).as_array()
        expected = np.array([1 + np.sqrt(0.5), 1 - np.sqrt(0.5), 1.0])
        rep.note("freq_err", np.abs(w - expected).max())
        assert np.abs(w - expected).max() < 1e-10
        eig = np.linalg.eigvals(build_lambda(params))
        target = np.concatenate([1j * w, -1j * w])
        err = max(np.abs(eig - t).min() for t in target)
        err = max(err, max(np.abs(target - e).min() for e in eig))
        rep.note("eig_err", err)
        assert err < 1e-10


def test_criterion_2_duality_and_decomposition(rng):
    with Report(2, "duality and spectral decomposition, 100 params", budget=5.0) as rep:
        for params in random_stable(rng, 100):
            model = PenningModel.from_params(params.b, params.v)
            pairs = model.pairs
            dual = pairs.duality_matrix()
            rep.note("duality", np.abs(dual - np.eye(6)).max())
            rep.note("unit", np.abs(unit_decomposition(pairs) - np.eye(6)).max())
            rep.note("lambda", np.abs(lambda_reconstruction(pairs) - model.lambda_matrix).max())
        assert rep.worst["duality"] < 1e-12
        assert rep.worst["unit"] < 1e-10
        assert rep.worst["lambda"] < 1e-10


def test_criterion_3_ladder_algebra(rng):
    with Report(3, "commutator table and mode factorisation of H", budget=5.0) as rep:
        ref = PenningModel.from_params(1.0, -0.5)
        table = commutator_table(ref.modes)
        rep.note("table", np.abs(table["B_Bdag"] - np.eye(3)).max())
        rep.note("table", np.abs(table["B_B"]).max())
        rep.note("table", np.abs(table["Bdag_Bdag"]).max())
        own = [ref.modes.ladder_ops[k].adjoint() for k in range(3)]
        signs = [commutator(ref.modes.ladder_ops[k], own[k]) for k in range(3)]
        rep.note("table", np.abs(np.array(signs) - [1, -1, 1]).max())
        for params in random_stable(rng, 100):
            model = PenningModel.from_params(params.b, params.v)
            rep.note("H_resid", hamiltonian_residual(model.modes, params))
        assert rep.worst["table"] < 1e-12
        assert rep.worst["H_resid"] < 1e-10


def test_criterion_4_extremal_state():
    with Report(4, "extremal Gaussian and finite-difference annihilation", budget=30.0) as rep:
        model = PenningModel.from_params(1.0, -0.5)
        r = np.sqrt(0.5)
        expected = np.diag([r, r, 1.0])
        rep.note("a_err", np.abs(model.gaussian.a_matrix - expected).max())
        assert rep.worst["a_err"] < 1e-12
        grid = default_grid(model.params, n_sigma=4.0, points_per_sigma=2.0)
        pts = grid.points().reshape(-1, 3)
        psi = lambda p: phi0(model.gaussian, p)  # noqa: E731
        for j in range(3):
            rep.note("fd_resid", ladder_residual_fd(
                psi, model.vectors.alpha[j], model.vectors.beta[j], 0.0, pts, h=1e-3
            ))
        assert rep.worst["fd_resid"] < 1e-6


def test_criterion_5_aocs_equals_docs(rng):
    with Report(5, "AOCS table equals displaced vacuum, 20 labels", budget=60.0) as rep:
        params = TrapParams(1.0, -0.5)
        model = PenningModel.from_params(params.b, params.v)
        for _ in range(20):
            label = model.label(*random_z(rng, 1.0))
            zeta = fock.docs_vector(label, 30)
            table = aocs_coefficients(label, 30)
            rep.note("entry_err", np.abs(zeta - table.coeffs.ravel()).max())
            rep.note("eigen_resid", fock.eigenrelation_residual(label, 30))
        assert rep.worst["entry_err"] < 1e-10
        assert rep.worst["eigen_resid"] < 1e-10


def test_criterion_6_moments(rng):
    with Report(6, "coherent moments, uncertainty and Fock energy", budget=60.0) as rep:
        for params in random_stable(rng, 4):
            model = PenningModel.from_params(params.b, params.v)
            fsys = fock.build_fock(model.freqs, 30)
            for _ in range(2):
                label = model.label(*random_z(rng, 1.0))
                mom = coherent_moments(params, label)
                rep.note("mean_err", np.abs(mom.mean_R - label.gamma).max())
                rep.note("mean_err", np.abs(mom.mean_P - label.sigma).max())
                rep.note("product_err", np.abs(mom.uncertainty_products - 0.5).max())
                grid = default_grid(params, center=label.gamma, n_sigma=8, points_per_sigma=3)
                q = quadrature_moments(lambda p: phi_z(model.gaussian, label, p), grid)
                rep.note("quad_err", np.abs(q.uncertainty_products - 0.5).max())
                rep.note("quad_err", np.abs(q.mean_r - mom.mean_R).max())
                rep.note("quad_err", np.abs(q.mean_p - mom.mean_P).max())
                zeta = fock.docs_vector(label, 30)
                rep.note("fock_err", abs(fsys.expect_H(zeta) - energy_mean(model.freqs, label)))
                rep.note("fock_err", abs(fsys.variance_H(zeta) - energy_variance(params, label)))
        assert rep.worst["mean_err"] < 1e-12
        assert rep.worst["product_err"] < 1e-12
        assert rep.worst["quad_err"] < 1e-6
        assert rep.worst["fock_err"] < 1e-8


def test_criterion_7_propagator(rng):
    with Report(7, "spectral propagator against Pade exponential", budget=5.0) as rep:
        for params in random_stable(rng, 20):
            model = PenningModel.from_params(params.b, params.v)
            t1, t2 = rng.uniform(-10, 10, 2)
            u1 = propagator(model.pairs, t1)
            rep.note("expm_err", np.abs(u1 - expm(model.lambda_matrix * t1)).max())
            u12 = propagator(model.pairs, t1 + t2)
            rep.note("group_err", np.abs(u1 @ propagator(model.pairs, t2) - u12).max())
        assert rep.worst["expm_err"] < 1e-10
        assert rep.worst["group_err"] < 1e-9


def test_criterion_8_unbounded_spectrum():
    with Report(8, "energy(0, n2, 0) strictly decreasing to n2 = 1e6", budget=1.0) as rep:
        w = frequencies(TrapParams(1.0, -0.5))
        n2 = np.arange(0, 10**6 + 1)
        e = energy(0, n2, 0, w)
        steps = np.diff(e)
        rep.note("smallest_drop", -steps.max())
        assert np.all(steps < 0)
        assert e[-1] < -1e5


CLI_RUNS = [
    ["spectrum", "--check"],
    ["wavefunction", "--z1", "0.5,-0.25", "--z3", "0,1", "--grid", "-1.5:1.5:0.25"],
    ["audit", "--z1", "1,0", "--z2", "0.3,0.4", "--oracle", "--cutoff", "20"],
    ["scan"],
]


def test_criterion_9_cli_determinism():
    with Report(9, "byte-identical CLI output across processes") as rep:
        rep.note("commands", len(CLI_RUNS))
        for argv in CLI_RUNS:
            outs = [
                subprocess.run(
                    [sys.executable, "-m", "penning_cs.cli", *argv],
                    capture_output=True, check=True,
                ).stdout
                for _ in range(2)
            ]
            assert outs[0] and outs[0] == outs[1], argv
