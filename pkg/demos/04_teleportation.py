"""Teleportation: a state assignment moved with two classical bits.

Alice Bell-measures her input qubit together with her half of a shared
maximally entangled pair; Bob applies the Pauli rotation matching her
broadcast outcome.  The final verification measurement says YES with
probability one, while Bob's own pre-broadcast description never moves
from the maximally mixed state.
"""

import numpy as np

import povmkit as pk

rng = np.random.default_rng(2024)
psi = rng.normal(size=2) + 1j * rng.normal(size=2)
psi /= np.linalg.norm(psi)
print("input state:", np.round(psi, 4))

for seed in range(4):
    t = pk.simulate_teleportation(psi, seed=seed)
    print(
        f"seed {seed}: Bell outcome {t.bell_outcome}, correction "
        f"{t.correction}, verification {t.verification_probability:.12f}"
    )

t = pk.simulate_teleportation(psi, seed=0)
print("\nBell outcome probabilities:", np.round(t.bell_probabilities, 12))

# Bob's outcome-averaged state before hearing the news: find one transcript
# per outcome and average the conditionals
seen = {}
seed = 0
while len(seen) < 4:
    candidate = pk.simulate_teleportation(psi, seed=seed)
    seen.setdefault(candidate.bell_outcome, candidate)
    seed += 1
averaged = sum(
    c.bell_probabilities[k] * c.pre_correction_state.matrix
    for k, c in seen.items()
)
print(
    "outcome-averaged pre-correction state (should be I/2):\n",
    np.round(averaged, 12),
)
print(
    "\nnothing physical traveled: only Alice's predictions changed, and two "
    "bits let Bob line his system up with them."
)
