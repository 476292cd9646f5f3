#!/usr/bin/env python3
"""Offline generator for the bundled zero files.

Zeros of zeta come from mpmath.zetazero. Zeros of primitive Dirichlet
L-functions are bracketed by sign changes of the Hardy Z-function, scanned in
double precision (Hurwitz zeta via Euler-Maclaurin), then polished with
mpmath at 30 digits. For a complex character chi, zeros with negative
ordinate are the positive zeros of the conjugate character.

Usage: gen_zeros.py <out_dir>
"""
import math
import os
import sys
import time

import mpmath as mp
import numpy as np
from scipy.optimize import brentq
from scipy.special import bernoulli, loggamma

EM_TERMS = 400
EM_BERN = 24
BERN = bernoulli(2 * EM_BERN)


def hurwitz_np(s, a):
    """zeta(s, a) for a vector s, scalar a in (0, 1], Euler-Maclaurin."""
    n = np.arange(EM_TERMS, dtype=float) + a
    logn = np.log(n)
    head = np.exp(-np.outer(s, logn)).sum(axis=1)
    big = EM_TERMS + a
    lb = math.log(big)
    tail = np.exp((1 - s) * lb) / (s - 1) + 0.5 * np.exp(-s * lb)
    poch = s.copy()
    powv = np.exp(-(s + 1) * lb)
    fact = 2.0
    for k in range(1, EM_BERN + 1):
        tail += BERN[2 * k] / fact * poch * powv
        poch = poch * (s + 2 * k - 1) * (s + 2 * k)
        powv = powv / (big * big)
        fact *= (2 * k + 1) * (2 * k + 2)
    return head + tail


class Dirichlet:
    def __init__(self, q, values):
        self.q = q
        self.values = values  # values[k] = chi(k), k = 0..q-1
        self.a = 0 if abs(values[q - 1] - 1) < 1e-12 else 1
        self.eps_half = None
        samples = np.linspace(3.0, 60.0, 41)
        w = self._phased(samples)
        w = w[np.abs(w) > 0.1]
        sq = (w / np.abs(w)) ** 2
        eps = sq.mean()
        eps /= abs(eps)
        assert np.all(np.abs(sq - eps) < 1e-8), "root number not constant"
        self.eps_half = np.sqrt(eps)

    def L_np(self, t):
        s = 0.5 + 1j * np.asarray(t, dtype=float)
        acc = np.zeros_like(s)
        for k in range(1, self.q):
            c = self.values[k]
            if c != 0:
                acc += c * hurwitz_np(s, k / self.q)
        return acc * np.exp(-s * math.log(self.q))

    def theta_np(self, t):
        t = np.asarray(t, dtype=float)
        return 0.5 * t * math.log(self.q / math.pi) + np.imag(
            loggamma((0.5 + self.a + 1j * t) / 2))

    def _phased(self, t):
        return np.exp(1j * self.theta_np(t)) * self.L_np(t)

    def Z_np(self, t):
        z = self._phased(t) / self.eps_half
        return np.real(z)

    def Z_mp(self, t):
        t = mp.mpf(t)
        s = mp.mpc(0.5, t)
        th = 0.5 * t * mp.log(mp.mpf(self.q) / mp.pi) + mp.im(
            mp.loggamma((0.5 + self.a + 1j * t) / 2))
        val = mp.exp(1j * th) * mp.dirichlet(s, self.values) / mp.mpc(self.eps_half)
        return mp.re(val)


def scan(fn, lo, hi, step):
    ts = np.arange(lo, hi + step, step)
    out = []
    for i in range(0, len(ts), 2000):
        out.append(fn(ts[i:i + 2000]))
    zs = np.concatenate(out)
    return ts, zs


def find_zeros(ch, lo, hi, step=0.05):
    ts, zs = scan(ch.Z_np, lo, hi, step)
    brackets = []
    for i in range(len(ts) - 1):
        if zs[i] == 0.0 or zs[i] * zs[i + 1] < 0:
            brackets.append((ts[i], ts[i + 1]))
        elif (0 < i and zs[i - 1] * zs[i] > 0 and zs[i] * zs[i + 1] > 0
              and abs(zs[i]) < abs(zs[i - 1]) and abs(zs[i]) < abs(zs[i + 1])):
            # local extremum of |Z| near the axis: look for a hidden pair
            if abs(zs[i]) < 0.2 * max(abs(zs[i - 1]), abs(zs[i + 1])):
                fine, fz = scan(ch.Z_np, ts[i - 1], ts[i + 1], step / 100)
                for j in range(len(fine) - 1):
                    if fz[j] * fz[j + 1] < 0:
                        brackets.append((fine[j], fine[j + 1]))
    brackets.sort()
    roots = []
    f = lambda x: float(ch.Z_np(np.array([x]))[0])
    for a, b in brackets:
        fa, fb = f(a), f(b)
        if fa == 0.0:
            r = a
        elif fb == 0.0:
            r = b
        elif fa * fb > 0:
            # batch and scalar evaluation disagree in sign at a near-zero
            # endpoint: widen slightly
            a, b = a - 1e-6, b + 1e-6
            if f(a) * f(b) > 0:
                continue
            r = brentq(f, a, b, xtol=1e-13)
        else:
            r = brentq(f, a, b, xtol=1e-13)
        if not roots or r - roots[-1] > 1e-8:
            roots.append(r)
    return roots


def polish(ch, x):
    r = mp.findroot(ch.Z_mp, (mp.mpf(x) - mp.mpf('1e-7'), mp.mpf(x) + mp.mpf('1e-7')),
                    solver='anderson', tol=mp.mpf('1e-24'))
    return float(r)


def mainterm(logA, degree, T):
    return T / math.pi * (logA + degree * math.log(T / (2 * math.pi * math.e)))


def write_file(out_dir, label, logA, height, gammas, note):
    d = os.path.join(out_dir, label)
    os.makedirs(d, exist_ok=True)
    path = os.path.join(d, '%d.zeros' % height)
    with open(path, 'w') as fh:
        fh.write('# label: %s\n' % label)
        fh.write('# logA: %.12f\n' % logA)
        fh.write('# degree: 1\n')
        fh.write('# height: %d\n' % height)
        fh.write('# central_multiplicity: 0\n')
        fh.write('# source: %s\n' % note)
        for g in gammas:
            fh.write('%.9f 1\n' % g)
    count = len(gammas)
    mt = mainterm(logA, 1, height)
    slack = math.log(math.exp(logA) * (height + 4))
    print('%s: %d zeros <= %d, 2N=%d mainterm=%.1f dev=%.2f slack=%.2f' % (
        label, count, height, 2 * count, mt, abs(2 * count - mt), slack), flush=True)
    return path


def zeta_zeros(height):
    mp.mp.dps = 30
    gam = []
    n = 1
    while True:
        g = float(mp.im(mp.zetazero(n)))
        if g > height:
            break
        gam.append(g)
        n += 1
    return gam


def dirichlet_job(out_dir, q, values, labels, height):
    mp.mp.dps = 30
    ch = Dirichlet(q, values)
    complex_char = any(abs(complex(v).imag) > 0 for v in values)
    lo = -height if complex_char else 0.5
    t0 = time.time()
    roots = find_zeros(ch, lo, height)
    print('q=%d scan: %d brackets in %.1fs' % (q, len(roots), time.time() - t0), flush=True)
    polished = []
    maxshift = 0.0
    for x in roots:
        p = polish(ch, x)
        maxshift = max(maxshift, abs(p - x))
        polished.append(p)
    print('q=%d polish max shift %.2e' % (q, maxshift), flush=True)
    pos = sorted(g for g in polished if 0 < g <= height)
    write_file(out_dir, labels[0], math.log(q), height, pos,
               'Hardy Z sign changes, mpmath polish (dps 30)')
    if complex_char:
        neg = sorted(-g for g in polished if -height <= g < 0)
        write_file(out_dir, labels[1], math.log(q), height, neg,
                   'Hardy Z sign changes of the conjugate, mpmath polish (dps 30)')


def main():
    out_dir = sys.argv[1]
    which = sys.argv[2:] or ['zeta', '3', '4', '5r', '5c']
    if 'zeta' in which:
        write_file(out_dir, 'zeta', 0.0, 1425, zeta_zeros(1425), 'mpmath.zetazero (dps 30)')
    if '3' in which:
        dirichlet_job(out_dir, 3, [0, 1, -1], ['chi_3_2'], 1300)
    if '4' in which:
        dirichlet_job(out_dir, 4, [0, 1, 0, -1], ['chi_4_3'], 1200)
    if '5r' in which:
        dirichlet_job(out_dir, 5, [0, 1, -1, -1, 1], ['chi_5_4'], 1150)
    if '5c' in which:
        # chi(2) = i for chi_5_2 and -i for its conjugate chi_5_3
        dirichlet_job(out_dir, 5, [0, 1, 1j, -1j, -1], ['chi_5_2', 'chi_5_3'], 1150)


if __name__ == '__main__':
    main()
