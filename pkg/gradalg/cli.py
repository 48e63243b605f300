#!/usr/bin/env python3
"""
gradalg CLI
Decision procedures, case reports and crossed-product presentations for
division algebras graded by a finite group
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from . import serialization as ser
from .cohomology import (
    Bicharacter,
    cocycle_from_bicharacter,
    commutator_form,
    enumerate_invariant_bicharacters,
    is_coboundary,
    is_nondegenerate,
    radical,
    schur_multiplier,
)
from .config import Config
from .errors import CocycleError, GradAlgError, SchemaError, ValidationError
from .graded_algebra import (
    bsz_algebra,
    center_basis,
    homogeneous_dims,
    is_central_simple,
    is_faithful,
    is_graded_simple,
    radical_is_zero,
    twisted_group_algebra,
)
from .groups import Subgroup, beta_violation, extension_splits
from .realization import build_presentation, relations_text, verify_presentation
from .structure import (
    case_report,
    compare_golden,
    form_exists,
    graded_center_presentation,
    render_markdown,
    structure_report,
    validate_triple,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level=logging.INFO, log_file: Optional[str] = None):
    """Setup logging configuration; stdout is reserved for reports"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def _read_json(path: str) -> Any:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e.msg} at line {e.lineno}")
    except OSError as e:
        raise SchemaError(f"cannot read input {path}: {e.strerror}")


def _parse_inline(text: str) -> Any:
    """Inline option value: JSON when it looks like JSON, else a built-in name"""
    stripped = text.strip()
    if stripped[:1] in '{[':
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as e:
            raise SchemaError(f"invalid inline JSON: {e.msg}")
    return stripped


def _input(args, schema: str) -> Any:
    if not args.input:
        raise SchemaError("this command needs --in", "$")
    return ser.validate(_read_json(args.input), schema)


def _emit(args, text: str):
    if getattr(args, 'out', None):
        Path(args.out).write_text(text, encoding='utf-8')
        logger.info(f"Report written to {args.out}")
    else:
        sys.stdout.write(text)


def _output_format(args, config: Config) -> str:
    return args.format or config.output_format


# Commands


def cmd_check_cocycle(args, config: Config) -> Dict[str, Any]:
    obj = _input(args, 'check_cocycle')
    if 'Q' in obj:
        ext = ser.extension_from_json(obj)
        violation = beta_violation(ext.H, ext.Q, ext.action, ext.beta)
        if violation is not None:
            raise CocycleError(f"extension data fails {violation[0]}", witness=list(violation[1]))
        G = ext.G
        return {
            'valid': True,
            'order': G.order,
            'abelian': G.is_abelian(),
            'splits': extension_splits(G, ext.kernel),
        }
    H = ser.abelian_group_from_json(obj['H'])
    alpha = ser.cocycle_from_json(H, obj)
    trivial, gamma = is_coboundary(alpha)
    result = {
        'valid': True,
        'commutator_form': ser.bicharacter_to_json(commutator_form(alpha)),
        'coboundary': trivial,
    }
    if trivial:
        result['gamma'] = gamma
    return result


def cmd_schur(args, config: Config) -> Dict[str, Any]:
    if args.group:
        spec = ser.validate(_parse_inline(args.group), 'abelian_group')
    else:
        spec = _input(args, 'abelian_group')
    H = ser.abelian_group_from_json(spec)
    return {'multiplier': ser.abelian_group_to_json(schur_multiplier(H))}


def cmd_enumerate_phi(args, config: Config) -> Dict[str, Any]:
    if args.extension:
        spec = _parse_inline(args.extension)
        ser.validate({'extension': spec}, 'extension')
    else:
        spec = _input(args, 'extension')['extension']
    ext = ser.extension_from_json(spec, "$.extension")
    phis = enumerate_invariant_bicharacters(ext, config.threads)
    rows = []
    for phi in phis:
        rad = radical(phi)
        rows.append({
            'E': [list(row) for row in phi.E],
            'nondegenerate': is_nondegenerate(phi),
            'radical': ser.abelian_group_to_json(rad.group),
        })
    return {'H': ser.abelian_group_to_json(ext.H), 'count': len(rows), 'bicharacters': rows}


def cmd_twisted_algebra(args, config: Config) -> Dict[str, Any]:
    obj = _input(args, 'twisted_algebra')
    H = ser.abelian_group_from_json(obj['H'])
    if 'phi' in obj:
        alpha = cocycle_from_bicharacter(ser.bicharacter_from_json(H, obj['phi']))
    else:
        alpha = ser.cocycle_from_json(H, obj['alpha'])
    A = twisted_group_algebra(H, alpha)
    result = {
        'dimension': A.dim,
        'n': A.n,
        'center_dimension': len(center_basis(A)),
        'central_simple': is_central_simple(A),
        'semisimple': radical_is_zero(A),
        'commutator_form': ser.bicharacter_to_json(commutator_form(alpha)),
    }
    if args.dump:
        result['algebra'] = ser.algebra_to_json(A)
    return result


def cmd_bsz(args, config: Config) -> Dict[str, Any]:
    P = ser.bsz_from_json(_input(args, 'bsz'))
    A = bsz_algebra(P)
    dims = homogeneous_dims(A)
    result = {
        'dimension': A.dim,
        's': P.s,
        'homogeneous_dims': {P.G.name(g): dims[g] for g in sorted(dims)},
        'faithful': is_faithful(A),
        'graded_simple': is_graded_simple(A),
    }
    if args.dump:
        result['algebra'] = ser.algebra_to_json(A)
    return result


def cmd_form_exists(args, config: Config) -> Dict[str, Any]:
    P = ser.bsz_from_json(_input(args, 'bsz'))
    return ser.form_report_to_json(form_exists(P))


def cmd_graded_center(args, config: Config) -> Dict[str, Any]:
    obj = _input(args, 'graded_center')
    G = ser.group_from_json(obj['G'], "$.G")
    listed = [ser.element_of(G, x, f"$.H_elements[{k}]") for k, x in enumerate(obj['H_elements'])]
    H = Subgroup(G, tuple(sorted(listed)))
    phi = ser.bicharacter_from_json(H.abelian_type, obj['phi'], "$.phi")
    report = structure_report(G, H, phi, obj.get('d', 1))
    center = graded_center_presentation(G, H, phi)
    return {'report': ser.structure_report_to_json(report), 'center': ser.graded_center_to_json(center)}


def _golden_table(args, config: Config) -> Dict[str, Any]:
    path = Path(args.compare_golden) if args.compare_golden != 'default' else config.golden_path(args.group, args.d)
    if not path.exists():
        raise SchemaError(f"golden table {path} not found")
    with open(path, 'r', encoding='utf-8') as f:
        golden = yaml.safe_load(f) or {}
    return ser.validate(golden, 'golden')


def cmd_case_report(args, config: Config) -> str:
    G = ser.group_from_json(_parse_inline(args.group), "--group")
    rows = case_report(G, args.d, config.threads)
    if args.compare_golden:
        problems = compare_golden(rows, _golden_table(args, config))
        if problems:
            for problem in problems:
                logger.error(f"Golden mismatch: {problem}")
            raise ValidationError(f"{len(problems)} golden mismatches", witness=problems)
        logger.info(f"Case report for {args.group} matches the golden table")
    if _output_format(args, config) == 'markdown':
        return render_markdown(rows, title=f"{args.group} (d={args.d})")
    return ser.dumps(ser.case_report_to_json(args.group, args.d, rows))


def cmd_realize(args, config: Config) -> str:
    if args.extension:
        spec = {'extension': _parse_inline(args.extension), 'd': args.d}
        if args.phi:
            spec['phi'] = _parse_inline(args.phi)
        obj = ser.validate(spec, 'triple')
    else:
        obj = _input(args, 'triple')
    ext = ser.extension_from_json(obj['extension'], "$.extension")
    phi = ser.bicharacter_from_json(ext.H, obj['phi'], "$.phi") if 'phi' in obj else Bicharacter.trivial(ext.H)
    triple = validate_triple(ext, phi, obj['d'])
    P = build_presentation(triple, config.threads)
    if _output_format(args, config) == 'markdown':
        return relations_text(P)
    return ser.dumps(ser.presentation_to_json(P))


def cmd_verify(args, config: Config) -> Dict[str, Any]:
    obj = _input(args, 'presentation')
    P = ser.presentation_from_json(obj)
    report = verify_presentation(P, config.threads)
    result = ser.verification_to_json(report, P)
    if not report.ok:
        failed = [name for name, ok in report.checks.items() if not ok]
        raise _ReportedFailure(f"presentation failed checks {failed}", result)
    return result


def cmd_config_init(args, config: Config) -> Dict[str, Any]:
    config.save_config()
    logger.info(f"Configuration written to {config.config_path}")
    return {'config_path': str(config.config_path)}


class _ReportedFailure(ValidationError):
    """Rejection whose full report is still printed"""

    def __init__(self, message: str, report: Dict[str, Any]):
        super().__init__(message)
        self.report = report


COMMANDS = {
    'check-cocycle': cmd_check_cocycle,
    'schur': cmd_schur,
    'enumerate-phi': cmd_enumerate_phi,
    'twisted-algebra': cmd_twisted_algebra,
    'bsz': cmd_bsz,
    'form-exists': cmd_form_exists,
    'graded-center': cmd_graded_center,
    'case-report': cmd_case_report,
    'realize': cmd_realize,
    'verify': cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='gradalg',
        description='gradalg - Graded division algebra toolkit',
        formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument('--log-level', help='Override the configured log level')

    io = argparse.ArgumentParser(add_help=False)
    io.add_argument('--in', dest='input', help='Input JSON file')
    io.add_argument('--out', help='Output file (default stdout)')
    io.add_argument('--format', choices=['json', 'markdown'], help='Output format')

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    subparsers.add_parser('check-cocycle', parents=[io], help='Validate a 2-cocycle on H or extension data')

    schur_parser = subparsers.add_parser('schur', parents=[io], help='Schur multiplier of a finite abelian group')
    schur_parser.add_argument('--group', help='Abelian group as JSON, e.g. {"invariant_factors":[2,2]}')

    enum_parser = subparsers.add_parser('enumerate-phi', parents=[io], help='Q-invariant bicharacters on H')
    enum_parser.add_argument('--extension', help='Built-in extension (Q8, D4) or extension JSON')

    twisted_parser = subparsers.add_parser('twisted-algebra', parents=[io], help='Analyze a twisted group algebra')
    twisted_parser.add_argument('--dump', action='store_true', help='Include the structure constants')

    bsz_parser = subparsers.add_parser('bsz', parents=[io], help='Build and analyze a BSZ graded-simple algebra')
    bsz_parser.add_argument('--dump', action='store_true', help='Include the structure constants')

    subparsers.add_parser('form-exists', parents=[io], help='Decide the four division-form conditions')
    subparsers.add_parser('graded-center', parents=[io], help='Structure report and graded center for (G, H, phi)')

    case_parser = subparsers.add_parser('case-report', parents=[io], help='Table of all (H, phi) cases for a group')
    case_parser.add_argument('--group', required=True, help='Built-in group name or group JSON')
    case_parser.add_argument('--d', type=int, default=1, help='Degree of the e-component')
    case_parser.add_argument('--compare-golden', nargs='?', const='default',
                             help='Compare with the packaged golden table, or with the given YAML file')

    realize_parser = subparsers.add_parser('realize', parents=[io], help='Crossed presentation for a triple')
    realize_parser.add_argument('--extension', help='Built-in extension (Q8, D4) or extension JSON')
    realize_parser.add_argument('--phi', help='Bicharacter JSON (default trivial)')
    realize_parser.add_argument('--d', type=int, default=1, help='Degree of the e-component')

    subparsers.add_parser('verify', parents=[io], help='Run the presentation checks')

    config_parser = subparsers.add_parser('config', help='Configuration management')
    config_subparsers = config_parser.add_subparsers(dest='config_action')
    config_subparsers.add_parser('init', help='Write the default configuration file')
    return parser


def _failure_report(error: GradAlgError) -> Dict[str, Any]:
    if isinstance(error, _ReportedFailure):
        return error.report
    report: Dict[str, Any] = {'error': type(error).__name__, 'message': str(error)}
    if isinstance(error, SchemaError):
        report['path'] = error.path
    if isinstance(error, ValidationError) and error.witness is not None:
        report['witness'] = error.witness
    if getattr(error, 'check', None):
        report['check'] = error.check
    return report


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 1

    config = Config()
    setup_logging(getattr(logging, (args.log_level or config.log_level).upper(), logging.INFO), config.log_file)

    try:
        if args.command == 'config':
            if args.config_action != 'init':
                parser.parse_args(['config', '--help'])
            result = cmd_config_init(args, config)
        else:
            result = COMMANDS[args.command](args, config)
        _emit(args, result if isinstance(result, str) else ser.dumps(result))
    except SchemaError as e:
        logger.error(f"Invalid input: {e}")
        _emit(args, ser.dumps(_failure_report(e)))
        return 2
    except GradAlgError as e:
        logger.error(f"Rejected: {e}")
        _emit(args, ser.dumps(_failure_report(e)))
        return 1
    except (KeyError, IndexError, TypeError, ValueError) as e:
        # decoders index into the input directly; anything they trip over is malformed input
        logger.error(f"Malformed input: {e!r}")
        _emit(args, ser.dumps({'error': 'SchemaError', 'message': f"{type(e).__name__}: {e}", 'path': '$'}))
        return 2
    except Exception as e:
        logger.error(f"Error executing command: {e}")
        _emit(args, ser.dumps({'error': type(e).__name__, 'message': str(e)}))
        return 1

    return 0


if __name__ == '__main__':
    sys.exit(main())
