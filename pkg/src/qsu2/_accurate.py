"""Compensated (double-double) matrix products for wide dynamic range checks.

Identities such as [s, r] = tanh(t)(s^2 - r^2 + 1) cancel products of order
e^{2 t mu} down to results of order e^{t mu}.  Near the guard rail, plain
binary64 products round away exactly the digits those cancellations need, so
the residual evaluators carry every product and sum as an unevaluated pair
(hi, lo) of doubles via error-free transformations.  This stays fixed-width
float arithmetic and vectorises over numpy arrays; only the verification
residuals use it, never the constructions themselves.
"""

import numpy as np

_SPLIT = 134217729.0  # 2**27 + 1, Veltkamp splitting constant for binary64


def _two_sum(a, b):
    s = a + b
    t = s - a
    return s, (a - (s - t)) + (b - t)


def _fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _two_prod(a, b):
    p = a * b
    ah = _SPLIT * a
    ah = ah - (ah - a)
    al = a - ah
    bh = _SPLIT * b
    bh = bh - (bh - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def from_double(a):
    a = np.array(a, dtype=float)
    return a, np.zeros_like(a)


def add(x, y):
    xh, xl = x
    yh, yl = y
    sh, se = _two_sum(xh, yh)
    th, tl = _two_sum(xl, yl)
    se = se + th
    sh, se = _fast_two_sum(sh, se)
    return _fast_two_sum(sh, se + tl)


def sub(x, y):
    yh, yl = y
    return add(x, (-yh, -yl))


def scale(x, c):
    """Multiply a dd pair by a plain double c."""
    xh, xl = x
    ph, pl = _two_prod(xh, c)
    return _fast_two_sum(ph, pl + xl * c)


def matmul(x, y):
    """Product of two dd matrices, accumulated in dd."""
    xh, xl = x
    yh, yl = y
    out_h = np.zeros((xh.shape[0], yh.shape[1]))
    out_l = np.zeros_like(out_h)
    for k in range(xh.shape[1]):
        a, ae = xh[:, k : k + 1], xl[:, k : k + 1]
        b, be = yh[k : k + 1, :], yl[k : k + 1, :]
        ph, pl = _two_prod(a, b)
        pl = pl + (a * be + ae * b)
        out_h, out_l = add((out_h, out_l), (ph, pl))
    return out_h, out_l


def identity(n):
    return np.eye(n), np.zeros((n, n))


def hi(x):
    """Collapse a dd pair back to a plain double array."""
    return x[0] + x[1]


def mul(x, y):
    """Elementwise product of two dd pairs."""
    xh, xl = x
    yh, yl = y
    ph, pl = _two_prod(xh, yh)
    return _fast_two_sum(ph, pl + (xh * yl + xl * yh))


def div_double(x, c):
    """Divide a dd pair by a plain double c."""
    xh, xl = x
    q = xh / c
    ph, pl = _two_prod(q, c)
    return _fast_two_sum(q, ((xh - ph) - pl + xl) / c)


_LN2 = (0.6931471805599453, 2.3190468138462996e-17)


def exp(x):
    """Elementwise e^x of a dd pair, good to ~1e-32 relative.

    Argument reduction x = m ln2 + r with |r| <= ln2/2, Taylor series for
    e^r carried in dd, exact rescaling by 2^m.  Arguments stay within the
    package guard rail (|x| <= ~30), far from overflow.
    """
    xh, xl = x
    m = np.round(xh / _LN2[0])
    mh, ml = _two_prod(m, _LN2[0])
    ml = ml + m * _LN2[1]
    r = add((xh, xl), (-mh, -ml))
    term = (np.ones_like(xh), np.zeros_like(xh))
    acc = (np.ones_like(xh), np.zeros_like(xh))
    for k in range(1, 27):
        term = div_double(mul(term, r), float(k))
        acc = add(acc, term)
    mi = m.astype(int)
    return np.ldexp(acc[0], mi), np.ldexp(acc[1], mi)


def sinh(x):
    """Elementwise sinh of a dd pair."""
    ep = exp(x)
    em = exp((-x[0], -x[1]))
    return scale(add(ep, (-em[0], -em[1])), 0.5)


def cosh(x):
    """Elementwise cosh of a dd pair."""
    ep = exp(x)
    em = exp((-x[0], -x[1]))
    return scale(add(ep, em), 0.5)


def prod_scalar(a, b):
    """Exact dd product of two plain doubles (elementwise)."""
    return _two_prod(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
