"""Command-line front end: grid exports, tomography and teleportation
reports, and the self-test battery.

Exit codes: 0 success, 1 failed check, 2 bad flags or state spec,
3 file I/O failure, 4 tomography coverage error.
"""

import argparse
import json
import math
import sys

import numpy as np

from .lattice import check_dim, half_width, labels, center_mod
from .theta import kernel_table
from .schwinger import s_op, t_family, t_overlap, depolarize
from .quasiprob import (
    validate_density,
    maximally_mixed,
    fock_projector,
    coherent_projector,
    char_fn,
    phase_fn,
    phase_fn_direct,
    smooth_p_to_w,
    smooth_w_to_h,
    random_density,
)
from .tomography import CoverageError, reconstruct_wigner, scattering_circuit
from .teleport import BellLabel, bell_projector, teleport

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_COVERAGE = 4


class UsageError(Exception):
    """Bad flag combination or unparsable state specification."""


def _fmt(x):
    return f"{x:.15g}"


def parse_state(spec, N):
    """Resolve a state specification string to a density matrix.

    Accepted forms: ``maximally-mixed``, ``fock:n``, ``coherent:mu,nu``,
    ``bell:w1,w2`` (dimension must equal the square of the Bell order),
    and ``file:path`` (JSON rows with [re, im] entries).
    """
    kind, _, arg = spec.partition(":")
    try:
        if kind == "maximally-mixed":
            return maximally_mixed(N)
        if kind == "fock":
            return fock_projector(int(arg), N)
        if kind == "coherent":
            mu, nu = (int(a) for a in arg.split(","))
            return coherent_projector(mu, nu, N)
        if kind == "bell":
            w1, w2 = (int(a) for a in arg.split(","))
            n = math.isqrt(N)
            if n * n != N:
                raise UsageError(
                    f"bell states live on a squared dimension; {N} is not a square"
                )
            return bell_projector(BellLabel(w1, w2), n)
        if kind == "file":
            with open(arg) as fh:
                rows = json.load(fh)
            rho = np.array([[complex(re, im) for re, im in row] for row in rows])
            return validate_density(rho)
    except UsageError:
        raise
    except OSError:
        raise
    except Exception as exc:
        raise UsageError(f"cannot parse state spec {spec!r}: {exc}") from exc
    raise UsageError(f"unknown state kind {kind!r}")


def parse_order(text):
    if "," in text:
        re_, im = text.split(",")
        s = complex(float(re_), float(im))
    else:
        s = complex(float(text))
    if abs(s) > 1 + 1e-12:
        raise UsageError(f"ordering parameter must satisfy |s| <= 1, got {s}")
    return s


def _order_str(s):
    return f"{s.real:.15g},{s.imag:.15g}"


def _grid_rows(grid, N):
    ell = half_width(N)
    for mu in labels(N):
        for nu in labels(N):
            val = grid[mu + ell, nu + ell]
            yield int(mu), int(nu), complex(val)


def write_grid(grid, N, s, kind, out, fmt):
    rows = [(a, b, v.real, v.imag) for a, b, v in _grid_rows(np.asarray(grid, dtype=complex), N)]
    if fmt == "csv":
        lines = ["label1,label2,re,im"]
        lines += [f"{a},{b},{_fmt(re)},{_fmt(im)}" for a, b, re, im in rows]
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "dim": N,
            "s": _order_str(s),
            "kind": kind,
            "data": [[a, b, float(_fmt(re)), float(_fmt(im))] for a, b, re, im in rows],
        }
        text = json.dumps(payload, indent=1) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


WHAT_ORDERS = {"glauber": 1 + 0j, "wigner": 0j, "husimi": -1 + 0j}


def cmd_grid(args):
    N = check_dim(args.dim)
    what = args.what
    if what == "kernel":
        grid, s, kind = kernel_table(N).astype(complex), 0j, "kernel"
    else:
        if args.state is None:
            raise UsageError(f"--what {what} requires --state")
        rho = parse_state(args.state, N)
        if rho.shape[0] != N:
            raise UsageError(
                f"state dimension {rho.shape[0]} does not match --dim {N}"
            )
        if what in WHAT_ORDERS:
            s = WHAT_ORDERS[what]
            grid, kind = phase_fn(rho, s).grid, "phase_fn"
        elif what == "phase":
            s = parse_order(args.s)
            grid, kind = phase_fn(rho, s).grid, "phase_fn"
        elif what == "char":
            s = parse_order(args.s)
            grid, kind = char_fn(rho, s).grid, "char_fn"
        else:
            raise UsageError(f"unknown --what {what!r}")
    write_grid(grid, N, s, kind, args.out, args.format)
    return EXIT_OK


def cmd_tomo(args):
    N = check_dim(args.dim)
    rho = parse_state(args.state, N)
    if rho.shape[0] != N:
        raise UsageError(f"state dimension {rho.shape[0]} does not match --dim {N}")
    from .tomography import (
        _is_prime,
        radon_q,
        radon_r,
        char_from_radon_q,
        char_from_radon_r,
        sample_marginal,
    )

    if not _is_prime(N):
        raise CoverageError(
            f"ray coverage requires prime N; N = {N} has degenerate rays"
        )
    rng = np.random.default_rng(args.seed) if args.shots else None
    ell = half_width(N)
    F = phase_fn(rho, 0)
    Xi = char_fn(rho, 0).grid

    def measured(dist):
        return sample_marginal(dist, args.shots, rng) if args.shots else dist

    rays = [((1, k), "Q") for k in range(N)] + [((0, 1), "R")]
    for (za, zb), axis in rays:
        if axis == "Q":
            vals = char_from_radon_q(measured(radon_q(F, za, zb)), za, zb, N)
        else:
            vals = char_from_radon_r(measured(radon_r(F, za, zb)), za, zb, N)
        ray_err = max(
            abs(
                vals[t + ell]
                - Xi[center_mod(za * t, N) + ell, center_mod(zb * t, N) + ell]
            )
            for t in labels(N)
        )
        print(f"ray ({za},{zb}): max |dXi| = {_fmt(float(ray_err))}")

    W = F.grid
    R = reconstruct_wigner(rho, shots=args.shots, rng=np.random.default_rng(args.seed) if args.shots else None).grid
    err = float(np.abs(R - W).max())
    if args.shots:
        print(f"shots: {args.shots}  seed: {args.seed}")
        print(f"statistical max |dW|: {_fmt(err)}")
        return EXIT_OK
    print(f"max |dW|: {_fmt(err)}")
    return EXIT_OK if err < 1e-9 else EXIT_FAIL


def cmd_teleport(args):
    N = check_dim(args.dim)
    rho = parse_state(args.state, N)
    if rho.shape[0] != N:
        raise UsageError(f"state dimension {rho.shape[0]} does not match --dim {N}")
    alpha = center_mod(args.alpha, N)
    beta = center_mod(args.beta, N)
    rho3, p = teleport(rho, alpha, beta)
    ell = half_width(N)
    W1 = phase_fn_direct(rho, 0).grid.real
    W3 = phase_fn_direct(rho3, 0).grid.real
    # locate the phase-space displacement by exhaustive shift matching
    best = None
    for da in labels(N):
        for db in labels(N):
            shifted = np.empty_like(W1)
            for mu in labels(N):
                for nu in labels(N):
                    shifted[mu + ell, nu + ell] = W1[
                        center_mod(mu - da, N) + ell, center_mod(nu - db, N) + ell
                    ]
            d = np.abs(W3 - shifted).max()
            if best is None or d < best[0]:
                best = (d, int(da), int(db))
    err, da, db = best
    # report the displacement that maps the receiver grid back onto the
    # sender grid; the recovery operation undoes exactly this amount
    da, db = center_mod(-da, N), center_mod(-db, N)
    fid = float(np.trace(rho3 @ rho3).real)  # purity proxy printed alongside
    print(f"p({alpha},{beta}) = {_fmt(p)}  (uniform value {_fmt(1 / N**2)})")
    print(f"measured displacement: ({da},{db})  expected ({center_mod(-alpha, N)},{beta})")
    print(f"shift-law residual: {_fmt(err)}")
    print(f"receiver purity: {_fmt(fid)}")
    ok = err < 1e-9 and (da, db) == (center_mod(-alpha, N), center_mod(beta, N))
    return EXIT_OK if ok else EXIT_FAIL


def _selftest_checks(N):
    ell = half_width(N)
    rng = np.random.default_rng(20240824)
    rho = random_density(N, rng)
    fam0 = t_family(0, N)
    yield (
        "resolution of identity",
        np.abs(fam0.sum(axis=(0, 1)) / N - np.eye(N)).max(),
        1e-10,
    )
    yield (
        "unit kernel traces",
        max(abs(np.trace(fam0[i, j]) - 1) for i in range(N) for j in range(N)),
        1e-10,
    )
    yield (
        "kernel orthogonality",
        max(
            abs(t_overlap(0, 0, d1, d2, N) - N * (d1 == 0) * (d2 == 0))
            for d1 in labels(N)
            for d2 in labels(N)
        ),
        1e-10,
    )
    P = phase_fn(rho, 1)
    yield (
        "hierarchy smoothing",
        max(
            np.abs(smooth_p_to_w(P).grid - phase_fn(rho, 0).grid).max(),
            np.abs(smooth_w_to_h(phase_fn(rho, 0)).grid - phase_fn(rho, -1).grid).max(),
        ),
        1e-10,
    )
    O = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    yield (
        "depolarizer",
        np.abs(depolarize(O) - np.trace(O) * np.eye(N)).max(),
        1e-10,
    )
    ez, ey = 0.0, 0.0
    Xi = char_fn(rho, 0).grid
    for eta in labels(N):
        for xi in labels(N):
            sz, sy = scattering_circuit(rho, eta, xi)
            val = math.sqrt(N) * Xi[eta + ell, xi + ell]
            ez = max(ez, abs(sz - val.real))
            ey = max(ey, abs(sy - val.imag))
    yield ("scattering circuit", max(ez, ey), 1e-10)
    try:
        W = reconstruct_wigner(rho)
        yield (
            "tomography round trip",
            np.abs(W.grid - phase_fn(rho, 0).grid).max(),
            1e-9,
        )
    except CoverageError:
        yield ("tomography round trip (composite N skipped)", 0.0, 1.0)
    if N <= 7:
        r3, p = teleport(rho, 1, -1)
        W3 = phase_fn_direct(r3, 0).grid
        W1 = phase_fn_direct(rho, 0).grid
        err = max(
            abs(
                W3[mu + ell, nu + ell]
                - W1[center_mod(mu - 1, N) + ell, center_mod(nu - 1, N) + ell]
            )
            for mu in labels(N)
            for nu in labels(N)
        )
        yield ("teleport shift law", max(err, abs(p - 1 / N**2)), 1e-9)


def cmd_selftest(args):
    N = check_dim(args.dim)
    failed = 0
    for name, residual, tol in _selftest_checks(N):
        ok = residual < tol
        failed += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: residual {_fmt(float(residual))} (tol {tol:g})")
    print(f"{'OK' if not failed else 'FAILED'}: dim {N}")
    return EXIT_OK if not failed else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qps", description="Discrete phase-space toolkit command line."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("grid", help="export a kernel/phase-space/characteristic grid")
    g.add_argument("--dim", type=int, required=True)
    g.add_argument(
        "--what",
        required=True,
        choices=["kernel", "wigner", "husimi", "glauber", "phase", "char"],
    )
    g.add_argument("--state", default=None)
    g.add_argument("--s", default="0", help='ordering parameter, "re" or "re,im"')
    g.add_argument("--out", default=None)
    g.add_argument("--format", default="csv", choices=["csv", "json"])
    g.set_defaults(func=cmd_grid)

    t = sub.add_parser("tomo", help="Radon-transform Wigner reconstruction report")
    t.add_argument("--dim", type=int, required=True)
    t.add_argument("--state", default="maximally-mixed")
    t.add_argument("--shots", type=int, default=None)
    t.add_argument("--seed", type=int, default=0)
    t.set_defaults(func=cmd_tomo)

    tp = sub.add_parser("teleport", help="three-party teleportation report")
    tp.add_argument("--dim", type=int, required=True)
    tp.add_argument("--state", default="fock:0")
    tp.add_argument("--alpha", type=int, default=0)
    tp.add_argument("--beta", type=int, default=0)
    tp.set_defaults(func=cmd_teleport)

    st = sub.add_parser("selftest", help="run the invariant battery")
    st.add_argument("--dim", type=int, required=True)
    st.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        if isinstance(exc, CoverageError):
            print(f"coverage error: {exc}", file=sys.stderr)
            return EXIT_COVERAGE
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
