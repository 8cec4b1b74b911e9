"""Command-line interface.

    equihodge <command> [--max-degree N] [--k-list a,b,c] [--strict-cutoff]
              [--output json|tsv] [--timing] <file>

Commands: ``check-axioms`` (the algebroid axiom suite), ``cyclic`` (cyclic
cohomology and its decomposition), ``betti`` (invariant Betti numbers and
Euler characteristic), ``hodge`` (the window operator suite), ``euler``
(the twisted exponent sweep), ``duality`` (the k = 1 pairing), ``all``.

Exit codes: 0 every check passed (skipped/declined entries are not
failures); 1 invalid input or a command the input cannot support; 2 a
mathematical check failed (the report carries a witness).

Reports are deterministic: repeated runs on the same document are
byte-identical.  The timing field is null unless ``--timing`` is given,
since wall-clock noise would break that guarantee.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import linalg
from .complexes import ComplexValidationError
from .cyclic import (
    assemble_total_complex,
    cyclic_cohomology,
    hochschild_cohomology,
)
from .hodge import HodgeValidationError, build_window_package, full_cutoff
from .hopf import HopfAlgebroid, check_hopf_axioms
from .io import DocumentError, ProblemDescription, document_hash, parse_document
from .report import Report
from .twisted import duality_check_k1, euler_index_sweep

SCHEMA_VERSION = 1
CYCLIC_DIM_BUDGET = 20000
DECOMPOSE_SAMPLES = 20
DECOMPOSE_SEED = 20240601


class IncompatibleCommand(Exception):
    """The document cannot support the requested command (exit code 1)."""


def effective_cyclic_degree(group, algebra, requested, budget=CYCLIC_DIM_BUDGET):
    """Largest degree <= requested whose total complex fits the size budget."""

    def tot_dim(m):
        return sum(len(group) ** p * algebra.dims.get(m - p, 0) for p in range(m + 1))

    n = requested
    while n > 0 and tot_dim(n + 1) > budget:
        n -= 1
    return n


def run_check_axioms(desc, opts):
    if desc.algebra_kind not in ("functions", "exterior"):
        raise IncompatibleCommand(
            "the axiom suite needs a coefficient algebra with a product"
            " (algebra kind 'functions' or 'exterior')"
        )
    algebra = desc.build_algebra()
    hopf = HopfAlgebroid(algebra)
    return check_hopf_axioms(hopf)


def run_cyclic(desc, opts):
    group = desc.group
    if not group.is_finite:
        raise IncompatibleCommand("cyclic cohomology is computed for finite groups")
    algebra = desc.build_algebra()
    requested = opts.max_degree
    effective = effective_cyclic_degree(group, algebra, requested)
    rep = Report("cyclic")
    rep.add_table("requested_max_degree", [requested])
    rep.add_table("effective_max_degree", [effective])
    tc = assemble_total_complex(group, algebra, effective + 1)
    total = hochschild_cohomology(tc, effective)
    hc = cyclic_cohomology(group, algebra, effective, total_complex=tc)
    rep.add_table("total_cohomology", total)
    rep.add_table("cyclic_cohomology", hc)
    for n in range(effective + 1):
        expect = sum(total[n - 2 * k] for k in range(n // 2 + 1) if n - 2 * k >= 0)
        rep.add(f"HC^{n} = sum of H^(n-2k)", hc[n] == expect,
                witness=None if hc[n] == expect else f"HC^{n}={hc[n]}, sum={expect}")
    if desc.algebra_kind == "cochain" and desc.complex is not None:
        betti = desc.complex.invariant_betti()
        padded = list(betti) + [0] * (effective + 1)
        rep.add_table("invariant_betti", betti)
        for n in range(effective + 1):
            rep.add(f"H^{n}(total) = invariant Betti b_{n}", total[n] == padded[n],
                    witness=None if total[n] == padded[n]
                    else f"total={total[n]}, betti={padded[n]}")
    return rep


def run_betti(desc, opts):
    K = desc.complex
    if K is None:
        raise IncompatibleCommand("betti needs a simplicial space")
    rep = Report("betti")
    dims = [K.inv_dim(p) for p in range(K.dimension + 1)]
    betti = K.invariant_betti()
    rep.add_table("invariant_cochain_dims", dims)
    rep.add_table("invariant_betti", betti)
    chi = K.euler_characteristic()
    rep.add_table("euler_characteristic", [chi])
    chi_cochain = sum((-1) ** p * d for p, d in enumerate(dims))
    rep.add("Euler-Poincare: chi from Betti = chi from cochain dims",
            chi == chi_cochain)
    if not K.is_periodic:
        rep.merge(K.verify_invariant_subcomplex())
    return rep


def run_hodge(desc, opts):
    K = desc.complex
    if K is None:
        raise IncompatibleCommand("hodge needs a simplicial space")
    cutoff = desc.build_cutoff()
    if cutoff is None:
        if K.is_periodic:
            raise IncompatibleCommand("a periodic space needs a cutoff block")
        cutoff = full_cutoff(K)
    pkg = build_window_package(K, cutoff, strict=opts.strict_cutoff)
    rep = Report("hodge")
    rep.add_table("window_dims", [pkg.dims[p] for p in pkg.degrees])
    rep.add_table("harmonic_dims", pkg.harmonic_dims())
    rep.merge(pkg.verify_projection())
    rep.merge(pkg.verify_operators())
    rep.merge(pkg.verify_harmonic_isomorphism())

    rng = random.Random(DECOMPOSE_SEED)
    ok_residual = ok_orth = True
    for p in pkg.degrees:
        n = pkg.dims[p]
        for _ in range(DECOMPOSE_SAMPLES):
            w = [Fraction(rng.randint(-9, 9)) for _ in range(n)]
            h, image, _u = pkg.hodge_decompose(p, w)
            if any(a - b - c for a, b, c in zip(w, h, image)):
                ok_residual = False
            if pkg.inner(p, h, image) != 0:
                ok_orth = False
    rep.add(f"decomposition w = H(w) + Lap G(w), {DECOMPOSE_SAMPLES} samples/degree"
            f" (seed {DECOMPOSE_SEED})", ok_residual)
    rep.add("decomposition parts orthogonal", ok_orth)

    ok_closed = True
    for p in pkg.degrees:
        n = pkg.dims[p]
        if n == 0:
            continue
        d_p = pkg.d_f[p]
        closed = (linalg.nullspace(d_p) if (d_p and d_p[0]) else
                  linalg.columns(linalg.identity(n)))
        for w in closed:
            h = linalg.mat_vec(pkg.harmonic_projector[p], w)
            gw = linalg.mat_vec(pkg.green[p], w)
            if p >= 1 and pkg.dims.get(p - 1):
                part = linalg.mat_vec(
                    linalg.mat_mul(pkg.d_f[p - 1], pkg.d_f_adjoint[p - 1]), gw)
            else:
                part = [Fraction(0)] * n
            if [a + b for a, b in zip(part, h)] != w:
                ok_closed = False
    rep.add("closed cochains: w = d_f d_f* G(w) + H(w)", ok_closed)
    return rep


def run_euler(desc, opts):
    K = desc.complex
    if K is None:
        raise IncompatibleCommand("euler needs a simplicial space")
    twist = desc.build_twist()
    cutoff = desc.build_cutoff()
    return euler_index_sweep(K, twist, opts.k_list, f=cutoff)


def run_duality(desc, opts):
    K = desc.complex
    if K is None:
        raise IncompatibleCommand("duality needs a simplicial space")
    try:
        K.fundamental_cycle()
    except ComplexValidationError as e:
        raise IncompatibleCommand(f"duality needs a closed oriented manifold fixture: {e}")
    twist = desc.build_twist()
    return duality_check_k1(K, twist, f=desc.build_cutoff())


COMMANDS = {
    "check-axioms": run_check_axioms,
    "cyclic": run_cyclic,
    "betti": run_betti,
    "hodge": run_hodge,
    "euler": run_euler,
    "duality": run_duality,
}


def run_all(desc, opts):
    rep = Report("all")
    for name in ("check-axioms", "cyclic", "betti", "hodge", "euler", "duality"):
        try:
            sub = COMMANDS[name](desc, opts)
        except IncompatibleCommand as e:
            rep.skip(f"{name}: command", str(e))
            continue
        rep.merge(sub, prefix=f"{name}: ")
    return rep


def render_json(envelope):
    return json.dumps(envelope, sort_keys=True, indent=2) + "\n"


def render_tsv(envelope):
    lines = []
    for key in ("schema_version", "command", "fixture", "fixture_hash", "timing"):
        value = envelope[key]
        lines.append(f"# {key}\t{'-' if value is None else value}")
    for check in envelope["checks"]:
        lines.append("check\t{}\t{}\t{}".format(
            check["name"], check["status"], check.get("witness", "-") or "-"))
    for name, values in sorted(envelope["tables"].items()):
        lines.append(f"table\t{name}")
        lines.append("degree\t" + "\t".join(str(i) for i in range(len(values))))
        lines.append("value\t" + "\t".join(values))
    return "\n".join(lines) + "\n"


def build_parser():
    parser = argparse.ArgumentParser(
        prog="equihodge",
        description="Exact cyclic cohomology and window Hodge theory for"
                    " discrete group actions on simplicial complexes.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS) + ["all"])
    parser.add_argument("file", help="problem description (JSON)")
    parser.add_argument("--max-degree", type=int, default=4,
                        help="top cohomological degree for cyclic computations")
    parser.add_argument("--k-list", default="-2,-1,0,1,2,3",
                        help="comma-separated twist exponents for euler")
    parser.add_argument("--strict-cutoff", action="store_true",
                        help="require f = 1 on a representative of every orbit")
    parser.add_argument("--output", choices=("json", "tsv"), default="json")
    parser.add_argument("--timing", action="store_true",
                        help="include wall-clock timing (breaks byte-determinism)")
    return parser


def main(argv=None):
    parser = build_parser()
    opts = parser.parse_args(argv)
    try:
        opts.k_list = [int(k) for k in str(opts.k_list).split(",") if k != ""]
    except ValueError:
        print("error: --k-list expects comma-separated integers", file=sys.stderr)
        return 1

    try:
        with open(opts.file) as fh:
            text = fh.read()
    except OSError as e:
        print(f"error: cannot read {opts.file}: {e}", file=sys.stderr)
        return 1

    started = time.monotonic()
    try:
        desc = parse_document(text)
        runner = run_all if opts.command == "all" else COMMANDS[opts.command]
        report = runner(desc, opts)
    except (DocumentError, IncompatibleCommand) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ComplexValidationError, HodgeValidationError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    envelope = {
        "schema_version": SCHEMA_VERSION,
        "command": opts.command,
        "fixture": desc.name,
        "fixture_hash": document_hash(desc.doc),
        "checks": [c.as_dict() for c in report.checks],
        "tables": {k: [str(v) for v in vs] for k, vs in report.tables.items()},
        "timing": round(time.monotonic() - started, 3) if opts.timing else None,
    }
    out = render_json(envelope) if opts.output == "json" else render_tsv(envelope)
    sys.stdout.write(out)
    return 0 if report.all_passed else 2


if __name__ == "__main__":
    sys.exit(main())
