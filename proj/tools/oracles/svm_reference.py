"""Reference soft-margin linear SVM for the frozen fixture in the tests.

Solves the dual QP with cvxopt and prints w, b and the decision values with
17 significant digits. Rerun after changing the fixture.
"""
import numpy as np
from cvxopt import matrix, solvers

rng = np.random.default_rng(7)
n = 40
y = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
x = rng.normal(size=(n, 3)) + 0.9 * y[:, None] * np.array([1.0, 0.5, -0.25])
x = np.round(x, 3)
C = 1.0

k = x @ x.T
P = matrix(np.outer(y, y) * k)
q = matrix(-np.ones(n))
G = matrix(np.vstack([-np.eye(n), np.eye(n)]))
h = matrix(np.hstack([np.zeros(n), C * np.ones(n)]))
A = matrix(y.reshape(1, -1))
b = matrix(0.0)
solvers.options.update(show_progress=False, abstol=1e-14, reltol=1e-14, feastol=1e-14)
a = np.array(solvers.qp(P, q, G, h, A, b)["x"]).ravel()
w = (a * y) @ x
free = (a > 1e-6) & (a < C - 1e-6)
bias = np.mean(y[free] - x[free] @ w)

print("x =", ",\n".join(", ".join(f"{v:.3f}" for v in row) for row in x))
print("w =", ", ".join(f"{v:.17g}" for v in w))
print("b =", f"{bias:.17g}")
print("free =", int(free.sum()))
print("f =", ", ".join(f"{v:.17g}" for v in x @ w + bias))
