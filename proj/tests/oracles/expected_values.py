"""Independent high-precision oracle for the frozen constants in the C++ tests.

Run: python3 tests/oracles/expected_values.py
Every number printed here is pasted verbatim into the doctest suites.
"""
import mpmath as mp

mp.mp.dps = 40


def alpha_loss(a, y, yh):
    a, yh = mp.mpf(a), mp.mpf(yh)
    e = (a - 1) / a
    return a / (a - 1) * (1 - y * yh**e - (1 - y) * (1 - yh) ** e)


def sig(t):
    return 1 / (1 + mp.e ** (-mp.mpf(t)))


def jsd(p, q):
    m = [(a + b) / 2 for a, b in zip(p, q)]
    kl = lambda x, y: mp.fsum(a * mp.log(a / b) for a, b in zip(x, y) if a > 0)
    return (kl(p, m) + kl(q, m)) / 2


def arimoto(p, q, a):
    a = mp.mpf(a)
    s = mp.fsum((mp.mpf(x) ** a + mp.mpf(y) ** a) ** (1 / a) for x, y in zip(p, q))
    return a / (a - 1) * (s - 2 ** (1 / a))


def gamma(p, a):
    a, p = mp.mpf(a), mp.mpf(p)
    return a / (a - 1) * (((1 + p) ** a + (1 - p) ** a) ** (1 / a) - 2 ** (1 / a))


def f_logistic(u):
    # -inf_t ( ln(1+e^t) + u ln(1+e^-t) ), minimiser t = ln u
    g = lambda t: mp.log(1 + mp.e**t) + u * mp.log(1 + mp.e ** (-t))
    return -g(mp.log(u))


def c_h(h, a):
    a = mp.mpf(a)
    if a <= 1:
        return sig(h) * sig(-h) ** ((a - 1) / a)
    return ((a - 1) / (2 * a - 1)) ** ((a - 1) / a) * a / (2 * a - 1)


def bound(k, l, M, R, N, S, bx, bz, n, m, delta, lphi, lpsi):
    uo = M[-1] * mp.fprod(mi * ri for mi, ri in zip(M[:-1], R))
    ut = N[-1] * mp.fprod(nj * sj for nj, sj in zip(N[:-1], S))
    return (lphi * bx * uo * mp.sqrt(3 * k) / mp.sqrt(n)
            + lpsi * uo * ut * bz * mp.sqrt(3 * (k + l - 1)) / mp.sqrt(m)
            + uo * mp.sqrt(mp.log(1 / mp.mpf(delta)))
            * (lphi * bx / mp.sqrt(2 * n) + lpsi * bz * ut / mp.sqrt(2 * m)))


def show(name, v):
    print(f"{name:45s} {mp.nstr(v, 17)}")


show("alpha_loss(1,1,0.5)", mp.log(2))
show("alpha_loss(1+1e-4,1,0.5)", alpha_loss(1 + mp.mpf("1e-4"), 1, 0.5))
show("alpha_loss(0.5,1,0.5)", alpha_loss(0.5, 1, 0.5))
show("alpha_loss(1e6,1,0.8)", alpha_loss(10**6, 1, 0.8))
show("alpha_loss(2,1,0.3)", alpha_loss(2, 1, 0.3))
show("alpha_loss(5,0,0.3)", alpha_loss(5, 0, 0.3))
show("jsd(.7/.3,.3/.7)", jsd([0.7, 0.3], [0.3, 0.7]))
show("2-sqrt2", 2 - mp.sqrt(2))
show("arimoto(.7/.3,.3/.7,2)", arimoto([0.7, 0.3], [0.3, 0.7], 2))
show("arimoto(.7/.3,.3/.7,0.5)", arimoto([0.7, 0.3], [0.3, 0.7], 0.5))
show("gamma_2(1)", gamma(1, 2))
show("gamma_1(1)=2ln2", 2 * mp.log(2))
show("gamma_5(0.3)", gamma(0.3, 5))
show("gamma_0.25(0.6)", gamma(0.6, 0.25))
show("0.64/0.68", mp.mpf(0.64) / mp.mpf(0.68))
show("sigma(1)", sig(1))
show("f_logistic(1)", f_logistic(1))
show("f_logistic(3)", f_logistic(3))
show("f_logistic(0.25)", f_logistic(mp.mpf("0.25")))
show("c_h(*,2)", c_h(1, 2))
show("c_h(2,1)", c_h(2, 1))
show("c_h(1,0.5)", c_h(1, 0.5))
show("c_h(3,0.2)", c_h(3, 0.2))
show("bound k=l=1 unit n=m=100 d=.05",
     bound(1, 1, [1], [], [1], [], 1, 1, 100, 100, 0.05, 1, 1))
show("bound k=2,l=2 example",
     bound(2, 2, [2, 3], [1], [1.5, 0.5], [2], 1, 2, 400, 900, 0.1, 1, 1))
show("1-1/64", 1 - mp.mpf(1) / 64)
