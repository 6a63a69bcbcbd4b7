"""How unpredictable is a typical measurement?

The von Neumann entropy is the outcome entropy of the best-case standard
measurement (the eigenbasis).  Averaging instead over Haar-random bases
gives the mean measurement entropy: a harmonic-number offset plus the
subentropy Q, a spectral quantity bounded by about 0.60995 bits.  Even a
pure state looks almost maximally random to a typical measurement.
"""

import numpy as np

import povmkit as pk

for label, rho in [
    ("pure qubit", pk.pure_state([1, 0])),
    ("maximally mixed qubit", pk.DensityOperator(np.eye(2) / 2)),
    ("random qutrit", pk.random_density(3, rank=3, seed=3)),
    ("maximally mixed, d=6", pk.DensityOperator(np.eye(6) / 6)),
]:
    report = pk.uncertainty_report(rho)
    print(
        f"{label:>22}: S = {report.von_neumann_bits:.4f}, "
        f"Q = {report.subentropy_bits:.4f}, "
        f"mean = {report.mean_entropy_bits:.4f} bits "
        f"(log2 d = {np.log2(rho.dim):.4f})"
    )

# --- closed form vs honest sampling ----------------------------------------
rho = pk.random_density(4, rank=4, seed=9)
closed = pk.mean_entropy(rho)
estimate, stderr = pk.monte_carlo_mean_entropy(rho, samples=100_000, seed=1)
print(
    f"\nmean entropy, closed form {closed:.5f} bits vs Monte Carlo "
    f"{estimate:.5f} +- {stderr:.5f} ({abs(closed-estimate)/stderr:.2f} sigma)"
)

# --- the subentropy bound ---------------------------------------------------
worst = 0.0
for d in (2, 3, 4, 5, 6):
    for seed in range(2000):
        worst = max(worst, pk.subentropy(pk.random_density(d, d, seed)))
bound = (1 - np.euler_gamma) / np.log(2)
print(f"\nmax subentropy over 10000 random states: {worst:.5f} bits")
print(f"universal bound (1 - gamma)/ln 2 = {bound:.5f} bits")

# --- degenerate spectra are exact, not approximated -------------------------
print(
    "\nQ for spectra approaching degeneracy (the limit is built in):"
)
for eps in (1e-2, 1e-4, 1e-6, 0.0):
    q = pk.subentropy_of_spectrum([0.5 + eps, 0.5 - eps])
    print(f"  eigenvalues 0.5 +- {eps:.0e}: Q = {q:.10f} bits")
print(f"  analytic limit 1 - 1/(2 ln 2) = {1 - 1/(2*np.log(2)):.10f} bits")
