"""Independent numpy oracle used to freeze expected values in the C++ tests.

Dense matrices, Kronecker products, and density matrices; shares no code
with the C++ simulator.
"""
import itertools
import numpy as np

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1, -1]).astype(complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def rx(t):
    return np.cos(t / 2) * I2 - 1j * np.sin(t / 2) * X


def on(q, g, n):
    ops = [I2] * n
    ops[q] = g
    out = ops[0]
    for o in ops[1:]:
        out = np.kron(out, o)
    return out


def zz(i, j, n):
    return on(i, Z, n) @ on(j, Z, n)


def rzz(i, j, t, n):
    return np.diag(np.exp(-1j * t / 2 * np.diag(zz(i, j, n))))


def costs(adj):
    n = len(adj)
    out = []
    for idx in range(2 ** n):
        x = [(idx >> (n - 1 - k)) & 1 for k in range(n)]
        c = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                c -= adj[i][j] * (x[i] + x[j] - 2 * x[i] * x[j])
        out.append(c)
    return np.array(out)


def ansatz(adj, betas, gammas):
    n = len(adj)
    psi = np.zeros(2 ** n, dtype=complex)
    psi[0] = 1
    for q in range(n):
        psi = on(q, H, n) @ psi
    for b, g in zip(betas, gammas):
        for i in range(n):
            for j in range(i + 1, n):
                if adj[i][j]:
                    psi = rzz(i, j, g * adj[i][j], n) @ psi
        for q in range(n):
            psi = on(q, rx(2 * b), n) @ psi
    return psi


def F(adj, betas, gammas):
    p = np.abs(ansatz(adj, betas, gammas)) ** 2
    return float(costs(adj) @ p)


def pauli_channel_all(rho, q, n):
    return sum(on(q, P, n) @ rho @ on(q, P, n).conj().T for P in (X, Y, Z)) / 3


def depolarized_k2(beta, gamma):
    """Density-matrix K2 ansatz with a random {X,Y,Z} after every gate on each touched qubit."""
    n = 2
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1

    def gate(U, qs):
        nonlocal rho
        rho = U @ rho @ U.conj().T
        for q in qs:
            rho = pauli_channel_all(rho, q, n)

    gate(on(0, H, n), [0])
    gate(on(1, H, n), [1])
    gate(rzz(0, 1, gamma, n), [0, 1])
    gate(on(0, rx(2 * beta), n), [0])
    gate(on(1, rx(2 * beta), n), [1])
    return np.real(np.diag(rho))


if __name__ == "__main__":
    k2 = [[0, 1], [1, 0]]
    k3 = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    print("K3 costs", costs(k3))
    print("pops K2 (pi/8, 3pi/2)", np.round(np.abs(ansatz(k2, [np.pi / 8], [1.5 * np.pi])) ** 2, 15))
    worst = 0
    for b in np.linspace(0, np.pi / 2, 41):
        for g in np.linspace(0, 2 * np.pi, 41):
            assert abs(F(k2, [b], [g]) - (-0.5 + 0.5 * np.sin(4 * b) * np.sin(g))) < 1e-12
            d = np.max(np.abs(depolarized_k2(b, g) - 0.25))
            worst = max(worst, d)
    print("closed form ok; worst depolarized deviation from 1/4:", worst)
    print("depolarized at (0.15pi,1.5pi):", depolarized_k2(0.15 * np.pi, 1.5 * np.pi))
    # K3 p=1 dense-grid oracle: 201x201 over beta in [0, pi/2], gamma in [0, 2pi]
    bs = np.linspace(0, np.pi / 2, 201)
    gs = np.linspace(0, 2 * np.pi, 201)
    best = min((F(k3, [b], [g]), b, g) for b in bs for g in gs)
    print("K3 dense-grid min: %.12f at beta=%.6f gamma=%.6f" % best)
    from scipy.optimize import minimize
    r = minimize(lambda v: F(k3, [v[0]], [v[1]]), [best[1], best[2]], method="Nelder-Mead",
                 options={"xatol": 1e-10, "fatol": 1e-14})
    print("K3 refined min: %.12f at" % r.fun, r.x)
    # overrotation: closed form with scaled angles
    eps = 0.1
    print("K2 F(0.15pi*(1.1),1.5pi*1.1) =", -0.5 + 0.5 * np.sin(4 * 0.15 * np.pi * 1.1) * np.sin(1.5 * np.pi * 1.1))
