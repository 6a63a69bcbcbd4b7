"""Two places where quantum mechanics over the real numbers breaks.

First: local product measurements determine a joint state uniquely over the
complex field, but over the reals the equation count falls short of the
unknown count, and an explicit kernel operator is invisible to every real
product measurement.

Second: an entrywise-real exchangeable state can fail to be any mixture of
real iid products, so real-field tomography cannot even get started.
"""

import numpy as np

import povmkit as pk

# --- counting equations vs unknowns ----------------------------------------
for dims in [(2, 2), (2, 3), (3, 3)]:
    complex_unknowns, real_equations, real_unknowns = pk.field_dimension_counts(
        *dims
    )
    print(
        f"dims {dims}: complex {complex_unknowns} equations for "
        f"{complex_unknowns} unknowns; real {real_equations} equations for "
        f"{real_unknowns} unknowns"
    )

report = pk.real_rank_deficiency_demo(2, 2, check_samples=5000, seed=0)
print(
    f"\ntwo qubits: real design rank {report.real_rank} < "
    f"{report.real_unknowns} unknowns (complex rank {report.complex_rank} "
    "= full)"
)
print("kernel witness (a real symmetric operator):")
print(np.round(report.kernel_witness, 4))
print(
    "worst pairing of the witness with 5000 random real product effects: "
    f"{report.max_kernel_pairing:.2e}"
)
overlap = abs(
    np.sum(report.kernel_witness * np.kron(pk.SIGMA_Y.matrix, pk.SIGMA_Y.matrix).real)
) / 2
print(f"overlap with the sigma_y x sigma_y direction: {overlap:.6f}")

# --- the exchangeable state with no real mixture representation -------------
for n in (2, 4, 6):
    rep = pk.real_field_counterexample(n)
    print(
        f"\n{n}-copy mixture of +y/-y products: largest imaginary entry "
        f"{rep.max_abs_imag:.1e}, swap defect {rep.swap_violation:.1e}, "
        f"sigma_y x sigma_y coefficient {rep.sigma2_coefficient:.1f}"
    )

print(
    "\nany mixture of real-entried qubit states has coefficient 0 on every "
    "Pauli string containing sigma_y:"
)
rng = np.random.default_rng(1)
states = []
for _ in range(4):
    x, z = rng.normal(size=2)
    r = max(np.hypot(x, z), 1.0)
    m = 0.5 * (np.eye(2) + 0.9 * x / r * pk.SIGMA_X.matrix
               + 0.9 * z / r * pk.SIGMA_Z.matrix)
    states.append(pk.DensityOperator(m))
real_mixture = pk.predictive_state(
    pk.Ensemble(rng.dirichlet(np.ones(4)), states), 2
)
coeff = np.trace(
    real_mixture.matrix @ np.kron(pk.SIGMA_Y.matrix, pk.SIGMA_Y.matrix)
).real
print(f"example real mixture: sigma_y x sigma_y coefficient {coeff:.2e}")
print("the counterexample state carries coefficient 1: unreachable.")
