"""Show that the block length needed for a fixed smoothing factor grows like
the inverse square root of the anisotropy strength."""

import numpy as np

from schwarzmg.lfa import smoothing_factor, symbol_schwarz_ellx1
from schwarzmg.model import fd_stencil, pde_coefficients
from schwarzmg.theory import ell_star, mu_linear

MU_TARGET = 0.5
EPSILONS = [1e-1, 1e-2, 1e-3]

print("target smoothing factor: %.2f" % MU_TARGET)
print("%-8s %6s %10s %10s" % ("eps", "ell*", "mu_linear", "mu_exact"))
for eps in EPSILONS:
    ell = ell_star(MU_TARGET, eps)  # ceil(sqrt(1 - mu*) / sqrt(eps))
    st = fd_stencil(pde_coefficients(eps, 0.0))
    mu = smoothing_factor(lambda w1, w2: symbol_schwarz_ellx1(st, w1, w2, ell))
    print("%-8g %6d %10.4f %10.4f" % (eps, ell, mu_linear("fd", "ellx1", ell, eps), mu))

# the predicted lengths follow ell* ~ eps^(-1/2): each tenfold drop in eps
# multiplies the required block length by about sqrt(10) = 3.16
ells = [ell_star(MU_TARGET, eps) for eps in EPSILONS]
ratios = [ells[i + 1] / ells[i] for i in range(len(ells) - 1)]
print()
print("length ratios per decade of eps:", ["%.2f" % r for r in ratios])
print("sqrt(10) = %.2f" % np.sqrt(10.0))
