"""JSON interchange for codes and classification reports.

Every field element is written as its integer index. Documents are emitted in
a fixed key order with two-space indentation so that loading and re-saving a
document reproduces it byte for byte.
"""
import json
import logging

from hermgrs.errors import DocumentError, HermGrsError, InvalidCode
from hermgrs.gf import build_tower
from hermgrs.grs import Certificate, GrsCode
from hermgrs.poly import Poly

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
_CODE_KEYS = ('schema_version', 'p', 'm', 'base_modulus', 'top_modulus', 'n', 'k', 'alpha', 'v', 'u',
              'certificate', 'provenance')
_CERTIFICATE_KEYS = ('witness_kind', 'witness', 'gram_zero', 'theorem7_ok', 'mds_checked')


def _witness_payload(certificate: Certificate):
    if isinstance(certificate.witness, Poly):
        return list(certificate.witness.coeffs)
    return certificate.witness


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _indices(t, values, name: str) -> list:
    if not isinstance(values, list):
        raise DocumentError(f"{name} must be a list of element indices, got {values!r}")
    try:
        return [t.check(e, name) for e in values]
    except InvalidCode as e:
        raise DocumentError(str(e)) from e


def code_to_document(code: GrsCode, certificate: Certificate, construction: str, parameters: dict) -> dict:
    t = code.tower
    return {
        'schema_version': SCHEMA_VERSION,
        'p': t.p,
        'm': t.m,
        'base_modulus': list(t.base_modulus),
        'top_modulus': list(t.top_modulus),
        'n': code.n,
        'k': code.k,
        'alpha': list(code.alpha),
        'v': list(code.v),
        'u': list(certificate.u),
        'certificate': {
            'witness_kind': certificate.witness_kind,
            'witness': _witness_payload(certificate),
            'gram_zero': certificate.gram_zero,
            'theorem7_ok': certificate.theorem7_ok,
            'mds_checked': certificate.mds_checked,
        },
        'provenance': {'construction': construction, 'parameters': dict(sorted(parameters.items()))},
    }


def document_to_code(doc: dict):
    """Returns (code, certificate, provenance) from a parsed document."""
    if not isinstance(doc, dict):
        raise DocumentError(f"expected a JSON object, got {type(doc).__name__}")
    missing = [key for key in _CODE_KEYS if key not in doc]
    if missing:
        raise DocumentError(f"document is missing {missing}")
    if doc['schema_version'] != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema_version {doc['schema_version']}")
    cert = doc['certificate']
    if not isinstance(cert, dict) or any(key not in cert for key in _CERTIFICATE_KEYS):
        raise DocumentError(f"certificate must carry {list(_CERTIFICATE_KEYS)}")
    for key in ('p', 'm', 'n', 'k'):
        if not _is_int(doc[key]):
            raise DocumentError(f"{key} must be an integer, got {doc[key]!r}")
    for key in ('gram_zero', 'theorem7_ok'):
        if not isinstance(cert[key], bool):
            raise DocumentError(f"certificate {key} must be true or false, got {cert[key]!r}")
    if cert['mds_checked'] is not None and not _is_int(cert['mds_checked']):
        raise DocumentError(f"mds_checked must be an integer or null, got {cert['mds_checked']!r}")

    try:
        t = build_tower(doc['p'], doc['m'])
        if list(t.base_modulus) != doc['base_modulus'] or list(t.top_modulus) != doc['top_modulus']:
            raise DocumentError(f"moduli {doc['base_modulus']}/{doc['top_modulus']} do not match the tower "
                                f"{list(t.base_modulus)}/{list(t.top_modulus)}")
        code = GrsCode(t, doc['k'], _indices(t, doc['alpha'], 'alpha'), _indices(t, doc['v'], 'v'))
    except DocumentError:
        raise
    except (HermGrsError, TypeError) as e:
        raise DocumentError(f"invalid code in document: {e}") from e
    if code.n != doc['n']:
        raise DocumentError(f"n={doc['n']} but alpha has {code.n} entries")

    kind = cert['witness_kind']
    if kind == 'polynomial':
        witness = Poly(t, _indices(t, cert['witness'], 'witness'))
    elif kind == 'scalar':
        witness = _indices(t, [cert['witness']], 'witness')[0]
    elif kind == 'none':
        if cert['witness'] is not None:
            raise DocumentError(f"witness_kind none carries witness {cert['witness']!r}")
        witness = None
    else:
        raise DocumentError(f"unknown witness_kind {kind!r}")
    u = _indices(t, doc['u'], 'u')
    if len(u) != code.n:
        raise DocumentError(f"u has {len(u)} entries but alpha has {code.n}")
    certificate = Certificate(u=tuple(u), witness=witness, gram_zero=cert['gram_zero'],
                              theorem7_ok=cert['theorem7_ok'], mds_checked=cert['mds_checked'])
    return code, certificate, doc['provenance']


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + '\n'


def load_document(path: str) -> dict:
    try:
        with open(path, "r") as f:
            return json.load(f)
    except FileNotFoundError:
        raise DocumentError(f"no such document: {path}")
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path} is not valid JSON: {e}")


def save_document(path: str, doc) -> None:
    with open(path, "w") as f:
        f.write(dumps(doc))
    logger.info(f"Wrote {path}")


def canonical(doc: dict) -> dict:
    """Re-serialises a code document through the typed model."""
    code, certificate, provenance = document_to_code(doc)
    return code_to_document(code, certificate, provenance.get('construction', 'unknown'),
                            provenance.get('parameters', {}))


def report_to_dict(report) -> dict:
    return {
        'q': report.q,
        'n': report.n,
        'total': report.total,
        'admissible': [entry.to_dict() for entry in report.admissible],
        'violations': report.violations,
        'counts': report.counts,
        'rejected_family_subsets': [list(subset) for subset in report.rejected_family_subsets],
        'clean': report.clean,
    }
