import math

import numpy as np
import pytest

from coulomblab._quad import adaptive_1d
from coulomblab.conformal import circle_map
from coulomblab.gas import (
    INCLUDES_FACTORIAL,
    ChainState,
    GasModel,
    acceptance_probability,
    empirical_density,
    exact_log_partition,
    free_energy_prediction,
    free_energy_remainder,
    log_partition_normalized,
    mean_density_inside,
    run_chain,
    statistic_covariance,
)


# ----------------------------------------------------------------- mechanics

def test_model_validation():
    with pytest.raises(ValueError):
        GasModel(2.0, 0, "ginibre")
    with pytest.raises(ValueError):
        GasModel(2.0, 4, "elliptic", tau=1.0)
    with pytest.raises(ValueError):
        GasModel(2.0, 4, "nonsense")
    with pytest.raises(ValueError):
        GasModel(2.0, 4, "contour")


def test_determinism_bit_for_bit():
    model = GasModel(2.0, 8, "ginibre")
    a = run_chain(model, 400, seed=21)
    b = run_chain(model, 400, seed=21)
    assert np.array_equal(a.positions, b.positions)
    assert np.array_equal(a.samples, b.samples)
    assert a.total_energy == b.total_energy
    c = run_chain(model, 400, seed=22)
    assert not np.array_equal(a.positions, c.positions)


def test_acceptance_rate_sane_and_consistent():
    for model in (GasModel(2.0, 8, "ginibre"),
                  GasModel(2.0, 8, "elliptic", tau=0.5),
                  GasModel(2.0, 8, "induced", alpha=1.0),
                  GasModel(2.0, 8, "sinh", c=1.0, L=2 * math.pi),
                  GasModel(2.0, 8, "contour", contour_map=circle_map(1.0))):
        st = run_chain(model, 600, seed=3)
        assert 0.0 < st.acceptance_rate < 1.0
        assert st.accept_count == round(st.acceptance_rate * st.proposal_count)


def test_energy_bookkeeping():
    for model in (GasModel(2.0, 10, "ginibre"),
                  GasModel(2.0, 6, "sinh", c=1.0, L=2 * math.pi),
                  GasModel(2.0, 6, "contour", contour_map=circle_map(1.0))):
        st = run_chain(model, 1000, seed=9)
        recomputed = model.total_energy(st.positions)
        assert abs(recomputed - st.total_energy) <= 1e-8 * max(1.0, abs(recomputed))


def test_detailed_balance_ratio_identity():
    model = GasModel(2.0, 16, "ginibre")
    st = run_chain(model, 100, seed=5)
    pos = st.positions
    rng = np.random.default_rng(0)
    for _ in range(500):
        i = int(rng.integers(model.N))
        prop = pos[i] + 0.8 * complex(rng.standard_normal(), rng.standard_normal())
        a_f, du = acceptance_probability(model, pos, i, prop)
        back = pos.copy()
        back[i] = prop
        a_r, _ = acceptance_probability(model, back, i, pos[i])
        assert abs(a_f / a_r - math.exp(-model.beta * du)) < 1e-12


def test_single_particle_gaussian_moment():
    model = GasModel(2.0, 1, "ginibre")
    st = run_chain(model, 60000, seed=3)
    r2 = np.abs(st.samples) ** 2
    mean = float(np.mean(r2))
    batches = r2.reshape(60, -1).mean(axis=1)
    stderr = float(np.std(batches, ddof=1) / math.sqrt(len(batches)))
    assert abs(mean - 1.0) < 3.5 * stderr


def test_overflow_guard():
    model = GasModel(2.0, 2, "induced", alpha=1.0)
    with pytest.raises((OverflowError, ValueError)):
        # particle exactly at the origin makes the log-weight non-finite
        acceptance_probability(model, np.array([1.0 + 0j, 2.0 + 0j]), 0, 0.0 + 0.0j)


def test_chain_state_tally_validation():
    with pytest.raises(ValueError):
        ChainState(np.array([1.0 + 0j]), 1.0, 0, 1, 0.9, 0.0,
                   np.zeros((1, 1), dtype=complex), accept_count=1,
                   proposal_count=10)


# ---------------------------------------------------------- density/support

def test_empirical_density_requires_samples():
    with pytest.raises(ValueError):
        empirical_density(np.zeros((10, 4), dtype=complex))


def test_empirical_density_and_edge_small_run():
    model = GasModel(2.0, 16, "ginibre")
    st = run_chain(model, 12000, seed=17)
    rep = empirical_density(st.samples)
    assert abs(rep["edge_radius"] - 4.0) / 4.0 < 0.08
    # density near the centre within 20% of 1/pi for this smaller run
    mask = (rep["bin_centers"] > 0.2 * 4.0) & (rep["bin_centers"] < 0.7 * 4.0)
    assert np.all(np.abs(rep["density"][mask] * math.pi - 1.0) < 0.2)
    planar = empirical_density(st.samples, kind="planar", bins=24)
    assert planar["density"].shape == (24, 24)


def test_elliptic_axis_ratio():
    # second moments of a uniform ellipse give the semi-axes without the
    # soft-edge bias of quantile estimators: <x^2>/<y^2> = (A/B)^2
    tau = 0.5
    model = GasModel(2.0, 32, "elliptic", tau=tau)
    st = run_chain(model, 20000, seed=19, record_every=2)
    pts = st.samples.ravel()
    ratio = math.sqrt(np.mean(pts.real ** 2) / np.mean(pts.imag ** 2))
    assert abs(ratio - 3.0) / 3.0 < 0.10  # (1+tau)/(1-tau) = 3


def test_induced_center_hole_small_run():
    model = GasModel(2.0, 16, "induced", alpha=1.0)
    st = run_chain(model, 15000, seed=23)
    dens = mean_density_inside(st.samples, 0.9 * math.sqrt(16.0))
    assert dens < 0.05 / math.pi


# --------------------------------------------------------- exact partitions

def test_exact_partition_examples():
    assert abs(exact_log_partition(GasModel(2.0, 2, "ginibre"))
               - 2.0 * math.log(math.pi)) < 1e-12
    assert abs(exact_log_partition(GasModel(2.0, 1, "sinh", c=2.0))
               - 0.5 * math.log(math.pi / 2.0)) < 1e-12
    with pytest.raises(ValueError):
        exact_log_partition(GasModel(1.0, 4, "ginibre"))


def test_elliptic_partition_n2():
    tau = 0.4
    val = exact_log_partition(GasModel(2.0, 2, "elliptic", tau=tau))
    assert abs(val - (2 * math.log(math.pi) + math.log(1 - tau ** 2))) < 1e-12


def test_induced_reduces_to_ginibre_product():
    # alpha N integer: C_{n,N} = N! pi^N prod (alpha N + j - 1)!; at n = N
    # (alpha -> 0 limit) the product collapses to the ginibre one.  Check the
    # printed structure at alpha = 1, N = 3 by direct evaluation.
    n = 3
    val = exact_log_partition(GasModel(2.0, n, "induced", alpha=1.0))
    direct = math.log(math.factorial(n)) + n * math.log(math.pi) + sum(
        math.log(math.factorial(n + j - 1)) for j in range(1, n + 1))
    assert abs(val - direct) < 1e-12
    assert INCLUDES_FACTORIAL["induced"] and not INCLUDES_FACTORIAL["ginibre"]


def test_sinh_partition_against_quadrature_n2():
    # 2d adaptive quadrature of the configuration integral at (c, L) = (1, 2pi)
    c_par, length = 1.0, 2.0 * math.pi
    model = GasModel(2.0, 2, "sinh", c=c_par, L=length)
    exact = math.exp(exact_log_partition(model))

    def outer(x1s):
        out = np.empty_like(x1s)
        for i, x1 in enumerate(x1s):
            def inner(x2s):
                pair = np.abs(2.0 * np.sinh(math.pi * (x2s - x1) / length))
                return np.exp(-(x1 * x1 + x2s * x2s)) * pair ** 2
            val, _ = adaptive_1d(inner, -9.0, 9.0, 1e-11)
            out[i] = val
        return out

    quad, _ = adaptive_1d(outer, -9.0, 9.0, 1e-9)
    assert abs(quad - exact) < 1e-8 * max(1.0, exact)


# -------------------------------------------------------------- predictions

def test_prediction_coefficients():
    pred = free_energy_prediction(GasModel(2.0, 32, "ginibre"))
    assert abs(pred.coefficients["N2logN"] - 0.5) < 1e-10
    assert abs(pred.coefficients["N2"] + 0.75) < 1e-10

    alpha = 1.0
    pred_i = free_energy_prediction(GasModel(2.0, 32, "induced", alpha=alpha))
    expect_n2 = (1 + alpha) ** 2 / 2 * math.log(1 + alpha) \
        - alpha ** 2 / 2 * math.log(alpha) - 0.75 - 1.5 * alpha
    assert abs(pred_i.coefficients["N2logN"] - (alpha + 0.5)) < 1e-9
    assert abs(pred_i.coefficients["N2"] - expect_n2) < 1e-9


def test_contour_prediction_unit_circle():
    model = GasModel(2.0, 16, "contour", contour_map=circle_map(1.0))
    pred = free_energy_prediction(model)
    assert abs(pred.coefficients["N2logN"] + 1.0) < 1e-12
    assert abs(pred.coefficients["N2"]) < 1e-12
    assert abs(pred.coefficients["NlogN"]) < 1e-12


def test_sinh_prediction_cubic_coefficient():
    c_par, length = 1.0, 2.0 * math.pi
    model = GasModel(2.0, 8, "sinh", c=c_par, L=length)
    pred = free_energy_prediction(model)
    target = math.pi ** 2 * model.beta / (6.0 * c_par * length ** 2)
    assert abs(pred.coefficients["N3"] - target) < 1e-12


def test_free_energy_remainders_converge():
    for ens, kw in (("ginibre", {}), ("elliptic", {"tau": 0.5}),
                    ("induced", {"alpha": 1.0})):
        model = GasModel(2.0, 8, ens, **kw)
        r50 = free_energy_remainder(model, 50)
        r200 = free_energy_remainder(model, 200)
        assert abs(r200) <= 0.05
        assert abs(r200) < abs(r50)


def test_normalized_partition_consistency():
    model = GasModel(2.0, 5, "ginibre")
    assert abs(log_partition_normalized(model)
               - (exact_log_partition(model) - math.log(math.factorial(5)))) < 1e-12


# ---------------------------------------------------------------- covariance

def test_statistic_covariance_constant_is_zero():
    model = GasModel(2.0, 4, "ginibre")
    est, stderr = statistic_covariance(model, lambda z: 1.0, lambda z: 1.0,
                                       chains=4, sweeps=400, seed=2)
    assert est == 0.0


def test_statistic_covariance_requires_chains():
    model = GasModel(2.0, 4, "ginibre")
    with pytest.raises(ValueError):
        statistic_covariance(model, abs, abs, chains=2, sweeps=100)


def test_statistic_covariance_re_trace():
    # Var(sum Re z_j / sqrt(N)) = 1/2 exactly for the beta = 2 ginibre gas
    n = 8
    model = GasModel(2.0, n, "ginibre")
    f = lambda z: z.real / math.sqrt(n)
    est, stderr = statistic_covariance(model, f, f, chains=6, sweeps=8000,
                                       seed=4, record_every=4)
    assert abs(est - 0.5) < 4.0 * max(stderr, 1e-3)


def test_statistic_covariance_stderr_scaling():
    n = 4
    model = GasModel(2.0, n, "ginibre")
    f = lambda z: z.real
    _, se4 = statistic_covariance(model, f, f, chains=4, sweeps=3000, seed=8)
    _, se16 = statistic_covariance(model, f, f, chains=16, sweeps=3000, seed=8)
    # quadrupling chains should roughly halve the stderr
    assert se16 < se4


def test_bulk_plus_surface_prediction_assembly():
    # the analytic comparator for Re(z)/sqrt(N): bulk (1/2 pi beta) int |grad f|^2
    # over the unit disk plus the background-convention surface term
    from coulomblab.fluctuations import covariance_circle

    beta = 2.0
    bulk = (1.0 / (2.0 * math.pi * beta)) * math.pi  # |grad Re Z|^2 = 1, area pi
    surface = 0.5 * covariance_circle(math.cos, math.cos, beta=beta)
    assert abs(bulk + surface - 0.5) < 1e-10
