"""
Command-line controller for the trinomial toolkit
"""
import argparse
import dataclasses
import logging
import os
import sys
from typing import List, Literal, Optional, Sequence, TextIO, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from cli import output
from deformed.errors import DeformedError, DomainError, TruncationError
from distributions import moments
from distributions.sampling import sample
from distributions.support import support
from models.distribution import DistributionSpec, Family, PmfReading
from models.report import AuditReport
from models.scheme import DeformationScheme, Preset
from models.settings import Settings, ToleranceSettings
from verify.audit import (
    AuditGrid, audit_identities, audit_lemmas, audit_spec, audit_theorems, normalization_sweep,
)
from verify.montecarlo import mc_negbin1
from verify.specializations import CATALOG, audit_specializations

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_TRUNCATION = 2
EXIT_STRICT = 3

COMMANDS = ('pmf', 'moments', 'cov', 'audit', 'sample', 'mc-check')
SUITES = ('theorems', 'specializations', 'normalization', 'identities', 'lemmas')
FORMAT_ENV = "RPQ_DEFAULT_FORMAT"
DEFAULT_DRAWS = 100
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


class UsageError(Exception):
    """Command line could not be parsed"""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class CliConfig(BaseModel):
    """Validated command line; --config and --log-level are consumed by the application"""
    model_config = ConfigDict(extra="forbid")

    command: Literal['pmf', 'moments', 'cov', 'audit', 'sample', 'mc-check']
    scheme: Optional[Preset] = None
    p: Optional[float] = Field(None, gt=0)
    q: Optional[float] = Field(None, gt=0)
    phi1: Optional[float] = Field(None, gt=0)
    phi2: Optional[float] = Field(None, gt=0)
    D: Optional[float] = None
    inversion: Optional[Literal['reciprocal']] = None
    family: Optional[Family] = None
    n: int = Field(1, ge=1)
    a1: float = Field(0.5, gt=0, lt=1)
    a2: float = Field(0.5, gt=0, lt=1)
    m1: int = Field(1, ge=0)
    m2: int = Field(1, ge=0)
    reading: PmfReading = PmfReading.NORMALIZED
    tol: Optional[float] = Field(None, gt=0)
    tail_tol: Optional[float] = Field(None, gt=0, le=1e-2)
    max_support: Optional[int] = Field(None, ge=1)
    seed: Optional[int] = Field(None, ge=0)
    samples: Optional[int] = Field(None, ge=1)
    format: Literal['csv', 'json'] = "csv"
    out: Optional[str] = None
    suite: Literal['theorems', 'specializations', 'normalization', 'identities', 'lemmas',
                   'all'] = "theorems"
    verify: bool = False
    strict: bool = False

    @model_validator(mode='after')
    def _check_combination(self) -> 'CliConfig':
        custom = self.scheme == Preset.CUSTOM
        if custom and (self.phi1 is None or self.phi2 is None):
            raise ValueError("--scheme custom needs --phi1 and --phi2")
        if not custom and any(v is not None for v in (self.phi1, self.phi2, self.D,
                                                      self.inversion)):
            raise ValueError("--phi1, --phi2, --D and --inversion apply to --scheme custom only")
        if self.command != 'audit' and self.scheme is None:
            raise ValueError(f"--scheme is required for {self.command}")
        if self.command in ('pmf', 'moments', 'cov', 'sample') and self.family is None:
            raise ValueError(f"--family is required for {self.command}")
        return self


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="rpq-trinomial",
                             description="Deformed trinomial distributions and their audits")
    parser.add_argument("command", help=f"one of {', '.join(COMMANDS)}")
    parser.add_argument("--scheme", help="bm, js, cj, quesne or custom")
    parser.add_argument("--p", type=float)
    parser.add_argument("--q", type=float)
    parser.add_argument("--phi1", type=float)
    parser.add_argument("--phi2", type=float)
    parser.add_argument("--D", type=float, dest="D")
    parser.add_argument("--inversion", help="inversion rule of a custom scheme (reciprocal)")
    parser.add_argument("--family", help="t1, nt1, t2 or nt2")
    parser.add_argument("--n", type=int)
    parser.add_argument("--a1", type=float)
    parser.add_argument("--a2", type=float)
    parser.add_argument("--m1", type=int)
    parser.add_argument("--m2", type=int)
    parser.add_argument("--reading", help="normalized or printed")
    parser.add_argument("--tol", type=float, help="overrides every audit tolerance")
    parser.add_argument("--tail-tol", type=float, dest="tail_tol")
    parser.add_argument("--max-support", type=int, dest="max_support")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--samples", type=int)
    parser.add_argument("--format", help="csv or json")
    parser.add_argument("--out", help="output file (default: standard output)")
    parser.add_argument("--suite", help=f"one of {', '.join(SUITES)} or all")
    parser.add_argument("--verify", action="store_true", default=None,
                        help="add oracle cross-values to moments and cov")
    parser.add_argument("--strict", action="store_true", default=None,
                        help="exit 3 when an audit row fails")
    parser.add_argument("--config", default="config.yaml")
    parser.add_argument("--log-level", dest="log_level", choices=LOG_LEVELS)
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


class CliController:
    """Validates a parsed command line, dispatches it and renders the result"""

    def __init__(self, settings: Optional[Settings] = None, stdout: Optional[TextIO] = None,
                 stderr: Optional[TextIO] = None, environ: Optional[dict] = None):
        self.settings = settings or Settings()
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr
        self.environ = os.environ if environ is None else environ

    def config_from_args(self, args: argparse.Namespace) -> CliConfig:
        """Build the validated config; unset flags fall back to the model defaults"""
        fields = {k: v for k, v in vars(args).items()
                  if k not in ('config', 'log_level') and v is not None}
        if 'format' not in fields:
            fields['format'] = self.environ.get(FORMAT_ENV) or self.settings.output.format
        return CliConfig(**fields)

    def run(self, args: argparse.Namespace) -> int:
        """Run one command and return its exit status"""
        try:
            config = self.config_from_args(args)
        except ValidationError as e:
            self._error(f"invalid arguments: {e}")
            return EXIT_INVALID
        try:
            text, status = self.execute(config)
        except TruncationError as e:
            self._error(f"truncation failed: {e}")
            return EXIT_TRUNCATION
        except DeformedError as e:
            self._error(f"{config.command}: {e}")
            return EXIT_INVALID
        try:
            self._write(text, config.out)
        except OSError as e:
            self._error(f"cannot write {config.out}: {e}")
            return EXIT_INVALID
        return status

    def execute(self, config: CliConfig) -> Tuple[str, int]:
        """Rendered output and exit status of a validated config"""
        logger.debug(f"Executing {config.command}")
        handler = {
            'pmf': self._pmf,
            'moments': self._moments,
            'cov': self._cov,
            'audit': self._audit,
            'sample': self._sample,
            'mc-check': self._mc_check,
        }[config.command]
        return handler(config)

    # building blocks

    def scheme(self, config: CliConfig) -> DeformationScheme:
        epsilon = self.settings.numerics.limit_epsilon
        if config.scheme == Preset.CUSTOM:
            return DeformationScheme.custom(config.phi1, config.phi2, config.D,
                                            config.inversion, epsilon)
        p = self.settings.audit.p if config.p is None else config.p
        q = self.settings.audit.q if config.q is None else config.q
        return DeformationScheme.from_preset(config.scheme, p, q, epsilon=epsilon)

    def _schemes(self, config: CliConfig) -> List[DeformationScheme]:
        if config.scheme is not None:
            return [self.scheme(config)]
        audit = self.settings.audit
        return [DeformationScheme.from_preset(Preset(name), audit.p, audit.q,
                                              epsilon=self.settings.numerics.limit_epsilon)
                for name in audit.presets]

    def _spec(self, config: CliConfig) -> DistributionSpec:
        return DistributionSpec(config.family, self.scheme(config), config.n, config.a1,
                                config.a2, config.reading)

    def _tolerances(self, config: CliConfig) -> ToleranceSettings:
        tolerances = self.settings.tolerances
        if config.tol is None:
            return tolerances
        return dataclasses.replace(
            tolerances, **{f.name: config.tol for f in dataclasses.fields(tolerances)})

    def _table_tail(self, config: CliConfig) -> float:
        return config.tail_tol or self.settings.truncation.table_tail_tol

    def _oracle_tail(self, config: CliConfig) -> float:
        return config.tail_tol or self.settings.truncation.oracle_tail_tol

    def _require_inversion(self, config: CliConfig, scheme: DeformationScheme, needed: bool):
        if needed and scheme.preset == Preset.CUSTOM and scheme.inversion is None:
            raise DomainError(f"{config.command} needs the inverse scheme; "
                              "pass --inversion reciprocal with --scheme custom")

    def _render(self, config: CliConfig, render, payload, *extra) -> str:
        return render(payload, *extra, config.format, self.settings.output.digits)

    # commands

    def _pmf(self, config: CliConfig) -> Tuple[str, int]:
        truncation = self.settings.truncation
        table = support(self._spec(config), self._table_tail(config),
                        config.max_support or truncation.max_support, truncation.initial_bound)
        return self._render(config, output.render_pmf, table), EXIT_OK

    def _sample(self, config: CliConfig) -> Tuple[str, int]:
        seed = self.settings.montecarlo.seed if config.seed is None else config.seed
        batch = sample(self._spec(config), config.samples or DEFAULT_DRAWS, seed,
                       self._table_tail(config))
        return self._render(config, output.render_sample, batch), EXIT_OK

    def _moments(self, config: CliConfig) -> Tuple[str, int]:
        spec = self._spec(config)
        if config.verify:
            self._require_inversion(config, spec.scheme, spec.family == Family.NT1)
            report = audit_spec(spec, max(config.m1, config.m2), self._tolerances(config),
                                self._oracle_tail(config))
            return self._report_output(config, report)
        values = moments.closed_forms(spec, config.m1, config.m2)
        return self._render(config, output.render_closed_forms, values, spec.to_dict()), EXIT_OK

    def _cov(self, config: CliConfig) -> Tuple[str, int]:
        spec = self._spec(config)
        if config.verify:
            self._require_inversion(config, spec.scheme, spec.family == Family.NT1)
            report = audit_spec(spec, 0, self._tolerances(config), self._oracle_tail(config))
            return self._report_output(config, report)
        values = {f"cov_{spec.family.value}()": moments.COVARIANCES[spec.family](spec)}
        return self._render(config, output.render_closed_forms, values, spec.to_dict()), EXIT_OK

    def _mc_check(self, config: CliConfig) -> Tuple[str, int]:
        mc = self.settings.montecarlo
        results = mc_negbin1(self.scheme(config), config.n, config.a1,
                             config.samples or mc.samples,
                             mc.seed if config.seed is None else config.seed, mc.max_trials)
        return self._render(config, output.render_mc, results), EXIT_OK

    def _audit(self, config: CliConfig) -> Tuple[str, int]:
        suites = SUITES if config.suite == 'all' else (config.suite,)
        report: Optional[AuditReport] = None
        for scheme in self._schemes(config):
            self._require_inversion(config, scheme,
                                    any(s in ('theorems', 'lemmas', 'identities')
                                        for s in suites))
            for suite in suites:
                if (suite == 'specializations' and config.suite == 'all'
                        and scheme.preset not in CATALOG):
                    logger.warning(f"{scheme.label}: no per-algebra displays, skipped")
                    continue
                part = self._suite(config, suite, scheme)
                report = part if report is None else report.merge(part, suite=config.suite)
        if report is None:
            raise DomainError(f"suite {config.suite} produced no rows")
        return self._report_output(config, report)

    def _suite(self, config: CliConfig, suite: str, scheme: DeformationScheme) -> AuditReport:
        audit = self.settings.audit
        tolerances = self._tolerances(config)
        params = [(a1, a2) for a1 in audit.params for a2 in audit.params]
        families = [config.family] if config.family else list(Family)
        if suite == 'theorems':
            return audit_theorems(scheme, params, audit.max_n, audit.max_order, families,
                                  tolerances, self._oracle_tail(config), audit.workers)
        if suite == 'lemmas':
            return audit_lemmas(scheme, params, audit.max_n, audit.max_order, tolerances,
                                self._oracle_tail(config), audit.workers)
        if suite == 'identities':
            return audit_identities([scheme], tolerances, workers=audit.workers)
        if suite == 'specializations':
            return audit_specializations(scheme.preset, scheme.p, scheme.q,
                                         tolerances=tolerances, workers=audit.workers)
        grid = AuditGrid([scheme], list(range(1, audit.max_n + 1)), params, families)
        return normalization_sweep(grid, config.reading, tolerances, self._table_tail(config),
                                   audit.workers)

    def _report_output(self, config: CliConfig, report: AuditReport) -> Tuple[str, int]:
        text = self._render(config, output.render_report, report)
        if config.strict and report.failed:
            self._error(f"{report.summary()['FAIL']} audit rows failed")
            return text, EXIT_STRICT
        return text, EXIT_OK

    def _write(self, text: str, path: Optional[str]):
        if path:
            with open(path, 'w', newline='') as f:
                f.write(text)
            logger.info(f"Wrote {path}")
        else:
            self.stdout.write(text)

    def _error(self, message: str):
        logger.debug(message)
        print(message, file=self.stderr)
