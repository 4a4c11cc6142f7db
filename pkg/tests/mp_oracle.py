"""High-precision reference values frozen into the test-suite.

Run ``python tests/mp_oracle.py`` to regenerate.  Everything here is built
with mpmath from the pure qubit x wedge x wedge state, independently of the
package's block construction and solvers.
"""
import mpmath as mp

mp.mp.dps = 40
CUT = 60  # series terms kept; t^(2*CUT) is far below double precision at t = 0.5


def rho_ar(t, cut=CUT):
    r = mp.atanh(t)
    ch, th = mp.cosh(r), mp.tanh(r)
    d1 = cut + 2
    psi = {}
    for n in range(cut + 1):
        psi[(0, n, n)] = th**n / ch / mp.sqrt(2)
        psi[(1, n + 1, n)] = th**n * mp.sqrt(n + 1) / ch**2 / mp.sqrt(2)
    dim = 2 * d1
    rho = mp.zeros(dim, dim)
    for (s, m, k), a in psi.items():
        for (s2, m2, k2), b in psi.items():
            if k == k2:
                rho[s * d1 + m, s2 * d1 + m2] += a * b
    return rho, d1


def entropy(vals):
    return -mp.fsum(v * mp.log(v, 2) for v in vals if v > 0)


def eig(m):
    return mp.eigsy(m, eigvals_only=True)


def cond_entropy(rho, d1, theta, phi=0):
    x = (mp.sin(theta) * mp.cos(phi), mp.sin(theta) * mp.sin(phi), mp.cos(theta))
    xs = mp.matrix([[x[2], x[0] - 1j * x[1]], [x[0] + 1j * x[1], -x[2]]])
    total = 0
    for sgn in (1, -1):
        proj = (mp.eye(2) + sgn * xs) / 2
        cond = mp.zeros(d1, d1)
        for a in range(2):
            for b in range(2):
                for c in range(2):
                    coef = proj[a, b] * proj[c, a]
                    if coef == 0:
                        continue
                    for n in range(d1):
                        for m in range(d1):
                            cond[n, m] += coef * rho[b * d1 + n, c * d1 + m]
        p = sum(cond[i, i] for i in range(d1)).real
        herm = mp.matrix(d1, d1)
        for i in range(d1):
            for j in range(d1):
                herm[i, j] = (cond[i, j] / p).real
        total += p * entropy(eig(herm))
    return total


def reference(t):
    rho, d1 = rho_ar(t)
    dim = 2 * d1
    h_ar = entropy(eig(rho))
    rho_r = [rho[n, n] + rho[d1 + n, d1 + n] for n in range(d1)]
    rho_a = [sum(rho[s * d1 + n, s * d1 + n] for n in range(d1)) for s in range(2)]
    h_a, h_r = entropy(rho_a), entropy(rho_r)
    h_diag = entropy([rho[i, i] for i in range(dim)])
    pt = mp.zeros(dim, dim)
    for s in range(2):
        for s2 in range(2):
            for n in range(d1):
                for m in range(d1):
                    pt[s2 * d1 + n, s * d1 + m] = rho[s * d1 + n, s2 * d1 + m]
    en = mp.log(mp.fsum(abs(v) for v in eig(pt)), 2)
    h_cond = cond_entropy(rho, d1, mp.pi / 2)
    return {
        "h_ar": h_ar, "h_a": h_a, "h_r": h_r, "mutual_info": h_a + h_r - h_ar,
        "cond_entropy_half_pi": h_cond, "discord": h_a - h_ar + h_cond,
        "h_dephased": h_diag, "mid": h_diag - h_ar, "log_negativity": en,
        "cond_entropy_pi_3": cond_entropy(rho, d1, mp.pi / 3),
    }


def brute_cutoff(t, eps):
    """Smallest N with sum_{n>N} lambda_n < eps, by explicit summation."""
    t = mp.mpf(t)
    q = t * t
    lam = lambda n: (1 - q) / 2 * q**n * (1 + (n + 1) * (1 - q))
    n = 0
    while True:
        tail = mp.nsum(lam, [n + 1, mp.inf])
        if tail < eps:
            return n
        n += 1


if __name__ == "__main__":
    for key, val in reference(mp.mpf("0.5")).items():
        print(f"{key} = {mp.nstr(val, 17)}")
    for t, eps in (("0.5", "1e-12"), ("0.5", "1e-10"), ("0.99", "1e-10"), ("0.9", "1e-12")):
        print(f"cutoff({t}, {eps}) = {brute_cutoff(t, mp.mpf(eps))}")
