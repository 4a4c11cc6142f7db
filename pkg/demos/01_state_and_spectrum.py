# Building the Alice-Rob state
# ============================
#
# Alice holds one half of a Bell state of two field modes; Rob, who holds the
# other half, accelerates uniformly.  Rob only sees one Rindler wedge, so his
# mode ends up entangled with a wedge he cannot access.  Tracing that wedge out
# leaves a mixed qubit x Fock-mode state.
import numpy as np

from unruh_discord import (
    AccelParam,
    TruncationPolicy,
    analytic_spectrum,
    build_rho_ar,
    oracle_rho_ar_via_purification,
    reduce_to_alice,
    reduce_to_rob,
    required_cutoff,
    tail_mass,
)

# The acceleration enters through t = tanh r.  t = 0 is an inertial Rob and
# t -> 1 is infinite acceleration.
p = AccelParam(0.6)
print(f"t = {p.t}, rapidity r = {p.r:.6f}, a/(|k|c) = {p.accel_ratio:.6f}")

# The Fock series is truncated adaptively: keep terms until the discarded
# probability is below epsilon.
for t in (0.1, 0.5, 0.9, 0.99, 0.999):
    n = required_cutoff(AccelParam(t), 1e-12)
    print(f"t = {t:<6} cutoff N = {n:<6} discarded mass = {tail_mass(AccelParam(t), n):.2e}")

# Two independent constructions of the same matrix.
policy = TruncationPolicy.adaptive(1e-12)
blocks = build_rho_ar(p, policy)
purified = oracle_rho_ar_via_purification(p, policy)
print("max |blocks - purification| =", np.abs(blocks.matrix - purified.matrix).max())
print("trace deficit =", blocks.truncation_deficit)

# The joint state is a direct sum of rank-one 2x2 blocks, so its non-zero
# eigenvalues are known in closed form.
dense = np.sort(np.linalg.eigvalsh(blocks.matrix))[::-1][: blocks.cutoff + 1]
closed = analytic_spectrum(p, blocks.cutoff).values
print("max |dense - closed form| eigenvalue error =", np.abs(dense - closed).max())

# Alice's marginal is maximally mixed at every acceleration; Rob's is diagonal.
print("rho_A =\n", reduce_to_alice(blocks))
print("rho_R diagonal (first 6):", reduce_to_rob(blocks).diagonal[:6])
