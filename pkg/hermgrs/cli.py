"""Command-line front end: ``python -m hermgrs.cli <subcommand> ...``.

Structured results go to standard output, logs and diagnostics to standard
error. Exit codes: 0 success, 1 verification failed, 2 usage error.
"""
import argparse
import logging
import sys

from environment import load_env
from hermgrs.construct import (FamilyKind, FamilySpec, construction1, construction2, family_roots, family_specs,
                               lemma2_holds, s1_set, s2_set, theorem7_check, theorem7_degrees)
from hermgrs.documents import (code_to_document, document_to_code, dumps, load_document, report_to_dict,
                               save_document)
from hermgrs.errors import HermGrsError, InputError, NormInfeasible, NoFeasibleLambda
from hermgrs.gf import build_tower, format_elt
from hermgrs.grs import gram_nonzero_entry, is_hermitian_self_dual, min_distance_bruteforce
from hermgrs.search import classify
from hermgrs.settings import default_jobs, load_caps, log_level, sweep_file
from hermgrs.sweep import load_sweep_config, run_sweeps

logger = logging.getLogger(__name__)

OK, FAILED, USAGE = 0, 1, 2


def _index_list(raw: str) -> list:
    try:
        return [int(part) for part in raw.split(',') if part.strip() != '']
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated element indices, got {raw!r}")


def _emit(args, payload, lines) -> None:
    if args.json:
        sys.stdout.write(dumps(payload))
    else:
        for line in lines:
            print(line)


def _row(t, values) -> str:
    return ' '.join(format_elt(t, int(e)) for e in values)


def _check_elements(t, flags: dict) -> None:
    for flag, value in flags.items():
        for e in (value if isinstance(value, list) else [value]):
            if e is not None:
                t.check(e, flag)


def _code_lines(code, certificate) -> list:
    t = code.tower
    lines = [f"[{code.n},{code.k}] GRS code over F_{t.order}",
             f"alpha: {_row(t, code.alpha)}",
             f"v:     {_row(t, code.v)}",
             f"u:     {_row(t, certificate.u)}",
             f"witness ({certificate.witness_kind}): {certificate.witness}",
             f"gram_zero={certificate.gram_zero} theorem7_ok={certificate.theorem7_ok}"]
    if certificate.mds_checked is not None:
        lines.append(f"minimum distance: {certificate.mds_checked}")
    return lines


def _finish_construction(args, code, certificate, name: str, parameters: dict) -> int:
    doc = code_to_document(code, certificate, name, parameters)
    if args.out:
        save_document(args.out, doc)
    _emit(args, doc, _code_lines(code, certificate))
    return OK


def cmd_field_info(args) -> int:
    t = build_tower(args.p, args.m)
    info = {'p': t.p, 'm': t.m, 'q': t.q, 'order': t.order, 'base_modulus': list(t.base_modulus),
            'top_modulus': list(t.top_modulus), 'theta': t.theta, 'generator': t.generator}
    lines = [f"F_{t.order} = F_{t.q}(θ), θ = index {t.theta}",
             f"base modulus (low to high): {list(t.base_modulus)}",
             f"top modulus  (low to high): {list(t.top_modulus)}",
             f"generator: {format_elt(t, t.generator)} (index {t.generator})"]
    _emit(args, info, lines)
    return OK


def cmd_s1(args) -> int:
    t = build_tower(args.p, args.m)
    _check_elements(t, {'--a': args.a, '--b': args.b})
    roots = s1_set(t, args.a, args.b)
    payload = {'a': args.a, 'b': args.b, 'valid': lemma2_holds(t, args.a, args.b), 'roots': roots}
    _emit(args, payload, [f"x^{t.q} = {format_elt(t, args.a)}x + {format_elt(t, args.b)}: "
                          f"{len(roots)} roots", _row(t, roots)])
    return OK


def cmd_s2(args) -> int:
    t = build_tower(args.p, args.m)
    _check_elements(t, {'--a': args.a, '--b': args.b})
    roots = s2_set(t, args.a, args.b)
    payload = {'a': args.a, 'b': args.b, 'valid': 0 < args.b < t.q, 'roots': roots}
    _emit(args, payload, [f"(x + {format_elt(t, args.a)})^{t.q + 1} = {format_elt(t, args.b)}: "
                          f"{len(roots)} roots", _row(t, roots)])
    return OK


def _points(args, t, roots_of) -> list:
    if args.alpha is not None:
        return args.alpha
    if args.n is None:
        raise InputError("give either --alpha or --n")
    roots = roots_of(t)
    if args.n > len(roots):
        raise InputError(f"--n {args.n} exceeds the {len(roots)} available roots")
    return roots[:args.n]


def cmd_construct1(args) -> int:
    t = build_tower(args.p, args.m)
    _check_elements(t, {'--a': args.a, '--b': args.b, '--alpha': args.alpha, '--lambda': args.lam})
    family = None
    if args.a is not None or args.b is not None:
        if args.a is None or args.b is None:
            raise InputError("--a and --b go together")
        family = FamilySpec(FamilyKind.LINE, args.a, args.b)
    alpha = _points(args, t, lambda tower: s1_set(tower, args.a, args.b) if family else [])
    code, certificate = construction1(t, alpha, lam=args.lam, family=family, check_mds=args.check_mds)
    parameters = {'a': args.a, 'b': args.b, 'lambda': certificate.witness}
    return _finish_construction(args, code, certificate, 'construction1', parameters)


def cmd_construct2(args) -> int:
    t = build_tower(args.p, args.m)
    _check_elements(t, {'--a': args.a, '--b': args.b, '--alpha': args.alpha, '--lambda': args.lam})
    alpha = _points(args, t, lambda tower: s2_set(tower, args.a, args.b))
    code, certificate = construction2(t, args.a, args.b, alpha, lam=args.lam, search_lambda=args.search_lambda,
                                      check_mds=args.check_mds)
    parameters = {'a': args.a, 'b': args.b, 'lambda': certificate.witness.leading}
    return _finish_construction(args, code, certificate, 'construction2', parameters)


def cmd_verify(args) -> int:
    code, certificate, _ = document_to_code(load_document(args.input))
    entry = gram_nonzero_entry(code)
    if entry is not None:
        print(f"gram nonzero at ({entry[0]},{entry[1]})", file=sys.stderr)
        return FAILED
    if code.n != 2 * code.k:
        print(f"n={code.n} is not 2k for k={code.k}", file=sys.stderr)
        return FAILED
    mismatch = certificate.check_consistent(code)
    if mismatch:
        print(f"certificate inconsistent: {mismatch}", file=sys.stderr)
        return FAILED
    _emit(args, {'hermitian_self_dual': True, 'n': code.n, 'k': code.k},
          [f"[{code.n},{code.k}] code is Hermitian self-dual; certificate consistent"])
    return OK


def cmd_mindist(args) -> int:
    code, _, _ = document_to_code(load_document(args.input))
    d = min_distance_bruteforce(code)
    mds = d == code.n - code.k + 1
    _emit(args, {'n': code.n, 'k': code.k, 'd': d, 'mds': mds}, [f"[{code.n},{code.k},{d}] mds={mds}"])
    return OK if mds else FAILED


def cmd_theorem7(args) -> int:
    code, _, _ = document_to_code(load_document(args.input))
    degrees = theorem7_degrees(code)
    ok = theorem7_check(code)
    agrees = ok == is_hermitian_self_dual(code)
    payload = {'degrees': [d if isinstance(d, int) else None for d in degrees], 'bound': code.k - 1,
               'hermitian_self_dual': ok, 'agrees_with_gram': agrees}
    _emit(args, payload, [f"remainder degrees {degrees} against bound {code.k - 1}: self-dual={ok}",
                          f"agrees with gram: {agrees}"])
    return OK if ok and agrees else FAILED


def cmd_classify(args) -> int:
    t = build_tower(args.p, args.m)
    report = classify(t, args.n, jobs=args.jobs)
    lines = [f"q={report.q} n={report.n}: {report.total} subsets, {len(report.admissible)} admissible",
             f"counts: {report.counts}"]
    lines += [f"  {_row(t, entry.alpha)}  witness {list(entry.witness)}  "
              f"{', '.join(f'{s.kind.value}(a={s.a},b={s.b})' for s in entry.families) or 'NO FAMILY'}"
              for entry in report.admissible]
    lines += [f"violation: {violation}" for violation in report.violations]
    _emit(args, report_to_dict(report), lines)
    return OK if report.clean else FAILED


def cmd_export_table(args) -> int:
    t = build_tower(args.p, args.m)
    docs, lines = [], []
    for spec in family_specs(t):
        roots = family_roots(t, spec)
        limit = min(len(roots), args.max_n) if args.max_n else len(roots)
        for n in range(2, limit + 1, 2):
            alpha = roots[:n]
            try:
                if spec.kind is FamilyKind.LINE:
                    code, certificate = construction1(t, alpha, family=spec)
                    name, lam = 'construction1', certificate.witness
                else:
                    code, certificate = construction2(t, spec.a, spec.b, alpha, search_lambda=True)
                    name, lam = 'construction2', certificate.witness.leading
            except (NoFeasibleLambda, NormInfeasible) as e:
                logger.warning(f"{spec} n={n}: {e}")
                continue
            docs.append(code_to_document(code, certificate, name, {'a': spec.a, 'b': spec.b, 'lambda': lam}))
            lines.append(f"{spec.kind.value:4} a={spec.a:<4} b={spec.b:<4} [{n},{n // 2}] "
                         f"lambda={lam} v={list(code.v)}")
    _emit(args, docs, lines)
    return OK


def cmd_sweep(args) -> int:
    config = load_sweep_config(args.config or sweep_file())
    results = run_sweeps(config, seed=args.seed, jobs=args.jobs)
    payload = {name: result.to_dict() for name, result in results.items()}
    lines = [f"{'PASS' if r.passed else 'FAIL'} {name}: checked={r.checked} notes={r.notes}"
             for name, r in results.items()]
    _emit(args, payload, lines)
    return OK if all(r.passed for r in results.values()) else FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='hermgrs', description='Hermitian self-dual GRS codes over F_{q^2}')
    sub = parser.add_subparsers(dest='command', required=True)

    def command(name: str, handler, help_text: str, field: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if field:
            p.add_argument('--p', type=int, required=True, help='characteristic')
            p.add_argument('--m', type=int, default=1, help='q = p^m')
        p.add_argument('--json', action='store_true', help='machine-readable output')
        p.set_defaults(handler=handler)
        return p

    command('field-info', cmd_field_info, 'describe the field tower')
    for name, handler, help_text in (('s1', cmd_s1, 'roots of x^q = ax + b'),
                                     ('s2', cmd_s2, 'roots of (x + a)^(q+1) = b')):
        p = command(name, handler, help_text)
        p.add_argument('--a', type=int, required=True)
        p.add_argument('--b', type=int, required=True)

    p = command('construct1', cmd_construct1, 'construction on a LINE family')
    p.add_argument('--alpha', type=_index_list)
    p.add_argument('--a', type=int)
    p.add_argument('--b', type=int)
    p.add_argument('--n', type=int)
    p.add_argument('--lambda', dest='lam', type=int)
    p.add_argument('--check-mds', action='store_true')
    p.add_argument('--out')

    p = command('construct2', cmd_construct2, 'construction on a NORM family')
    p.add_argument('--a', type=int, required=True)
    p.add_argument('--b', type=int, required=True)
    points = p.add_mutually_exclusive_group(required=True)
    points.add_argument('--n', type=int)
    points.add_argument('--alpha', type=_index_list)
    p.add_argument('--lambda', dest='lam', type=int)
    p.add_argument('--search-lambda', action='store_true')
    p.add_argument('--check-mds', action='store_true')
    p.add_argument('--out')

    for name, handler, help_text in (('verify', cmd_verify, 'check a code document'),
                                     ('mindist', cmd_mindist, 'brute-force minimum distance'),
                                     ('theorem7', cmd_theorem7, 'degree criterion for self-duality')):
        p = command(name, handler, help_text, field=False)
        p.add_argument('--in', dest='input', required=True, help='code document (JSON)')

    p = command('classify', cmd_classify, 'classify every n-subset of F_{q^2}')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--jobs', type=int, default=default_jobs())

    p = command('export-table', cmd_export_table, 'codes for every family and even length')
    p.add_argument('--max-n', type=int)

    p = command('sweep', cmd_sweep, 'run the sweeps in a YAML file', field=False)
    p.add_argument('--config', help='sweep file (default $HERMGRS_SWEEP_FILE or sweeps.yml)')
    p.add_argument('--seed', type=int)
    p.add_argument('--jobs', type=int, default=default_jobs())
    return parser


def _configure_logging() -> None:
    logging.basicConfig(
        level=log_level(),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[logging.StreamHandler(sys.stderr)]
    )


def dispatch(argv=None) -> int:
    load_env()
    try:
        parser = build_parser()
        _configure_logging()
        load_caps()
    except ValueError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return OK if e.code in (0, None) else USAGE

    try:
        return args.handler(args)
    except InputError as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except HermGrsError as e:
        logger.error(f"{args.command}: {e}")
        print(f"failed: {e}", file=sys.stderr)
        return FAILED
    except ValueError as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(dispatch())
