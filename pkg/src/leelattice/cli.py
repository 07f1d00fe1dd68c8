"""Command-line entry point.

Exit codes: 0 success, 1 value mismatch, 2 usage error, 3 infeasible instance.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import codes, distributions, intersection, lattices, mceliece, reductions, repro
from .errors import (DecodingError, EnumerationCapError, HypothesisError, InfeasibleError, OracleFailure,
                     PromiseViolation)
from .zq import ZqVec, l1_dist, lee_weight, reduce_mod_q

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output


def _sig(x):
    if isinstance(x, float):
        return float(f"{x:.9g}")
    if isinstance(x, dict):
        return {k: _sig(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_sig(v) for v in x]
    return x


def _cell(x) -> str:
    if isinstance(x, float):
        return f"{x:.9g}"
    if isinstance(x, (list, tuple)):
        return " ".join(_cell(v) for v in x)
    return str(x)


def emit(data, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "csv":
        rows = data if isinstance(data, list) else [data if isinstance(data, dict) else {"value": data}]
        buf = io.StringIO()
        if rows:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(list(rows[0].keys()))
            for r in rows:
                w.writerow([_cell(v) for v in r.values()])
        out.write(buf.getvalue())
    else:
        out.write(json.dumps(_sig(data)) + "\n")


# ---------------------------------------------------------------------------
# argument helpers


def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}") from None


def params(text: str) -> tuple[int, int, int, int]:
    v = int_list(text)
    if len(v) != 4:
        raise argparse.ArgumentTypeError("--params needs q,n,k,w")
    return tuple(v)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_code(path: str) -> codes.LinearCode:
    try:
        return codes.parse_code(_read(path))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _load_basis(path: str) -> lattices.LatticeBasis:
    try:
        return lattices.parse_basis(_read(path))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# handlers: each returns (data, exit code)


def h_dist_beta(a):
    m = distributions.lee_marginal(a.q, a.T)
    return {"q": a.q, "T": a.T, "beta": m.beta, "c1": m.c1}, EXIT_OK


def h_dist_renyi(a):
    if a.growth:
        return distributions.renyi_divergence_growth(a.T, a.delta or 0.5, a.growth), EXIT_OK
    dstar, bound = distributions.renyi_lower_bound(a.q, a.T)
    out = {"q": a.q, "T": a.T, "delta_star": dstar, "bound": bound}
    if a.delta is not None:
        out["delta"] = a.delta
        out["renyi_inf"] = distributions.renyi_inf_lee_hamming(a.q, a.T, a.delta)
    return out, EXIT_OK


def h_dist_kl_cont(a):
    if a.sigma is None:
        s, kl = distributions.sigma_min_continuous(a.b)
        return {"b": a.b, "sigma_min": s, "kl_min": kl}, EXIT_OK
    return {"b": a.b, "sigma": a.sigma, "n": a.n,
            "kl": distributions.kl_laplace_gauss_continuous(a.b, a.sigma, a.n)}, EXIT_OK


def h_dist_kl_disc(a):
    if a.sigma is None:
        s, kl = distributions.sigma_min_discrete(a.b)
        return {"b": a.b, "sigma_min": s, "kl_min": kl}, EXIT_OK
    return {"b": a.b, "sigma": a.sigma, "kl": distributions.kl_discrete_laplace_gauss(a.b, a.sigma)}, EXIT_OK


def h_table1(a):
    rows = repro.repro_table1()
    return rows, EXIT_OK if all(r["match"] for r in rows) else EXIT_MISMATCH


def h_figure_kl(a):
    if a.format == "json" and not a.format_given:
        a.format = "csv"
    return repro.figure_kl(repro.log_grid(a.b_min, a.b_max, a.points)), EXIT_OK


def h_code_mindist(a):
    code = _load_code(a.file)
    fn = codes.min_lee_distance if a.metric == "lee" else codes.min_hamming_distance
    return {"q": code.q, "n": code.n, "k": code.k, "metric": a.metric, "d": fn(code, a.cap)}, EXIT_OK


def h_code_enum(a):
    code = _load_code(a.file)
    rows = [{"codeword": list(c.values), "lee_weight": lee_weight(c)}
            for c in codes.enumerate_codewords(code, a.cap)]
    return rows, EXIT_OK


def h_lattice_lambda1(a):
    lam, _ = lattices.lambda1_l1(_load_basis(a.file))
    return lam, EXIT_OK


def h_lattice_lambda2(a):
    return lattices.lambda2_l1(_load_basis(a.file)), EXIT_OK


def h_lattice_member(a):
    b = _load_basis(a.file)
    if len(a.v) != b.n:
        raise UsageError(f"--v needs {b.n} entries")
    ok, z = lattices.member(b, a.v)
    return {"member": ok, "coefficients": list(z) if z else None}, EXIT_OK


def h_lattice_det(a):
    b = _load_basis(a.file)
    if b.full_rank:
        return {"det": lattices.determinant(b)}, EXIT_OK
    return {"gram_det": lattices.gram_det(b)}, EXIT_OK


def h_intersect_count(a):
    return intersection.intersection_count(_load_code(a.file), a.cap), EXIT_OK


def h_intersect_bound(a):
    bound, M, g, vac = intersection.minkowski_bound_parts(_load_code(a.file))
    return {"bound": bound, "M": M, "gram_det": g, "vacuous": vac}, EXIT_OK


def h_intersect_report(a):
    return intersection.report(_load_code(a.file), a.cap).to_dict(), EXIT_OK


def h_reduce_leedp_bdd(a):
    code = _load_code(a.code)
    r = reduce_mod_q(a.r, code.q)
    c = reductions.leedp_to_bdd(reductions.LeedpInstance(code, r, a.t), alpha=a.alpha)
    _, best = codes.nearest_codeword(code, r, a.cap)
    w = lee_weight(r - c)
    return {"codeword": list(c.values), "weight": w, "oracle_weight": best}, \
        EXIT_OK if w == best else EXIT_MISMATCH


def _bdd_instance(a):
    return reductions.BddInstance(_load_basis(a.lattice), tuple(a.r), a.alpha)


def h_reduce_bdd_leedp(a):
    inst = _bdd_instance(a)
    v = reductions.bdd_to_leedp(inst)
    _, best = lattices.closest_vector_l1_bruteforce(inst.basis, inst.r)
    d = l1_dist(v, inst.r)
    return {"vector": list(v), "distance": d, "oracle_distance": best}, EXIT_OK if d == best else EXIT_MISMATCH


def h_reduce_bdd_usvp(a):
    inst = _bdd_instance(a)
    v = reductions.bdd_to_usvp_embedding(inst, mu=a.mu, gamma=a.gamma)
    _, best = lattices.closest_vector_l1_bruteforce(inst.basis, inst.r)
    d = l1_dist(v, inst.r)
    return {"vector": list(v), "distance": d, "oracle_distance": best, "mu": a.mu}, \
        EXIT_OK if d == best else EXIT_MISMATCH


def h_reduce_decon(a):
    b = _load_basis(a.lattice)
    code = reductions.code_from_basis(b)
    same = lattices.construction_a(code).basis.same_lattice(b)
    return {"q": code.q, "code": [list(r) for r in code.gen], "equal": same}, EXIT_OK if same else EXIT_MISMATCH


def h_reduce_batch(a):
    if a.format == "json" and not a.format_given:
        a.format = "csv"
    rows = reductions.run_batch(_read(a.input).splitlines(), workers=a.workers, mu=a.mu)
    return rows, EXIT_OK if all(r["success"] for r in rows) else EXIT_MISMATCH


def _write_or_emit(text: str, path: str | None):
    if path:
        Path(path).write_text(text + "\n")
    return json.loads(text)


def h_mc_keygen(a):
    q, n, k, w = a.params
    kp = mceliece.keygen(q, n, k, w, mceliece.make_rng(a.seed))
    return _write_or_emit(mceliece.keypair_to_json(kp), a.out), EXIT_OK


def h_mc_encrypt(a):
    pub = mceliece.public_from_json(_read(a.key))
    if len(a.m) != pub.k:
        raise UsageError(f"--m needs {pub.k} entries")
    ct = mceliece.encrypt(pub, ZqVec.of(a.m, pub.q), mceliece.make_rng(a.seed))
    return _write_or_emit(mceliece.ciphertext_to_json(ct), a.out), EXIT_OK


def h_mc_decrypt(a):
    kp = mceliece.keypair_from_json(_read(a.key))
    ct = mceliece.ciphertext_from_json(_read(a.ct))
    return {"m": list(mceliece.decrypt(kp, ct).values)}, EXIT_OK


def h_mc_attack(a):
    pub = mceliece.public_from_json(_read(a.key))
    ct = mceliece.ciphertext_from_json(_read(a.ct))
    m = mceliece.message_recovery_attack(pub, ct, method=a.method, mu=a.mu)
    return {"m": list(m.values), "method": a.method}, EXIT_OK


def h_repro_examples(a):
    rows = repro.repro_examples()
    bad = [r for r in rows if not r["match"]]
    for r in bad:
        print(f"mismatch {r['label']} {r['generator']} {r['quantity']}: expected {r['expected']}, "
              f"computed {r['computed']}", file=sys.stderr)
    print(f"{len(rows) - len(bad)}/{len(rows)} match", file=sys.stderr)
    return rows, EXIT_MISMATCH if bad else EXIT_OK


# ---------------------------------------------------------------------------
# parser


class _FormatAction(argparse.Action):
    def __call__(self, parser, ns, values, option_string=None):
        ns.format = values
        ns.format_given = True


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json", action=_FormatAction)
    common.add_argument("--seed", type=int, default=0, help="64-bit RNG seed")
    common.add_argument("--cap", type=int, default=codes.DEFAULT_CAP, help="enumeration cap")
    common.set_defaults(format_given=False)

    p = argparse.ArgumentParser(prog="leelattice", description=__doc__.splitlines()[0])
    top = p.add_subparsers(dest="group", required=True)

    def group(name, help_):
        g = top.add_parser(name, help=help_)
        return g.add_subparsers(dest="cmd", required=True)

    def cmd(sub, name, handler, help_=None):
        c = sub.add_parser(name, parents=[common], help=help_)
        c.set_defaults(handler=handler)
        return c

    d = group("dist", "marginal laws and divergences")
    c = cmd(d, "beta", h_dist_beta, "tilt beta and c1 of the Lee marginal")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--T", type=float, required=True)
    c = cmd(d, "renyi", h_dist_renyi, "order-infinity Rényi divergence, Lee vs Hamming")
    c.add_argument("--q", type=int, default=5)
    c.add_argument("--T", type=float, required=True)
    c.add_argument("--delta", type=float)
    c.add_argument("--growth", type=int_list, help="q list: emit the lower bound along it")
    c = cmd(d, "kl-cont", h_dist_kl_cont, "continuous Laplace vs Gaussian KL")
    c.add_argument("--b", type=float, required=True)
    c.add_argument("--sigma", type=float)
    c.add_argument("--n", type=int, default=1)
    c = cmd(d, "kl-disc", h_dist_kl_disc, "discrete Laplace vs Gaussian KL")
    c.add_argument("--b", type=float, required=True)
    c.add_argument("--sigma", type=float)
    cmd(d, "table1", h_table1, "minimal discrete KL table with pass/fail")
    c = cmd(d, "figure-kl", h_figure_kl, "sigma_min and kl_min over a log grid of b")
    c.add_argument("--b-min", type=float, default=0.25)
    c.add_argument("--b-max", type=float, default=8.0)
    c.add_argument("--points", type=int, default=16)

    g = group("code", "linear codes over Z_q")
    c = cmd(g, "mindist", h_code_mindist)
    c.add_argument("file")
    c.add_argument("--metric", choices=["lee", "hamming"], default="lee")
    c = cmd(g, "enum", h_code_enum)
    c.add_argument("file")

    g = group("lattice", "integer lattices in the l1 norm")
    for name, h in (("lambda1", h_lattice_lambda1), ("lambda2", h_lattice_lambda2), ("det", h_lattice_det)):
        cmd(g, name, h).add_argument("file")
    c = cmd(g, "member", h_lattice_member)
    c.add_argument("file")
    c.add_argument("--v", type=int_list, required=True)

    g = group("intersect", "codewords inside the A_G lattice")
    for name, h in (("count", h_intersect_count), ("bound", h_intersect_bound), ("report", h_intersect_report)):
        cmd(g, name, h).add_argument("file")

    g = group("reduce", "oracle reductions with brute-force oracles")
    c = cmd(g, "leedp-bdd", h_reduce_leedp_bdd)
    c.add_argument("--code", required=True)
    c.add_argument("--r", type=int_list, required=True)
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--alpha", type=fraction)
    for name, h in (("bdd-leedp", h_reduce_bdd_leedp), ("bdd-usvp", h_reduce_bdd_usvp)):
        c = cmd(g, name, h)
        c.add_argument("--lattice", required=True)
        c.add_argument("--r", type=int_list, required=True)
        c.add_argument("--alpha", type=fraction, required=True)
        if name == "bdd-usvp":
            c.add_argument("--mu", type=int, default=1)
            c.add_argument("--gamma", type=fraction, default=Fraction(1))
    c = cmd(g, "decon-check", h_reduce_decon, "L_A(code_from_basis(B)) == L(B)")
    c.add_argument("--lattice", required=True)
    c = cmd(g, "batch", h_reduce_batch, "JSON-lines instances in, CSV rows out")
    c.add_argument("--input", required=True)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--mu", type=int, default=1)

    g = group("mceliece", "desk-scale Lee McEliece")
    c = cmd(g, "keygen", h_mc_keygen)
    c.add_argument("--params", type=params, required=True, help="q,n,k,w")
    c.add_argument("--out")
    c = cmd(g, "encrypt", h_mc_encrypt)
    c.add_argument("--key", required=True)
    c.add_argument("--m", type=int_list, required=True)
    c.add_argument("--out")
    for name, h in (("decrypt", h_mc_decrypt), ("attack", h_mc_attack)):
        c = cmd(g, name, h)
        c.add_argument("--key", required=True)
        c.add_argument("--ct", required=True)
        if name == "attack":
            c.add_argument("--method", choices=["bdd", "usvp"], default="bdd")
            c.add_argument("--mu", type=int, default=1)

    g = group("repro", "golden reproductions")
    cmd(g, "examples", h_repro_examples, "intersection examples vs published values")
    cmd(g, "table1", h_table1, "minimal discrete KL table vs published values")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        data, code = args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InfeasibleError, EnumerationCapError, HypothesisError, PromiseViolation, DecodingError) as exc:
        print(f"infeasible: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OracleFailure as exc:
        print(f"oracle failure: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(data, args.format)
    return code
