"""
Command-line entry point for the forcing workbench.

Every subcommand prints a short human-readable result on stdout and, with
--out, writes a JSON-lines event log (one `run` header, one record per stage,
certificates, and a final summary). --manifest supplies labelled objects and
budgets; flags given on the command line win over the manifest.

Exit codes:
    0   certified success
    1   input error (grammar, unknown label, inadmissible condition)
    2   Unknown verdict, exhausted budget, aborted stage or failed --verify
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, replace

import click
from opentelemetry import trace

from cli.events import EventLog, diagnostic, open_log
from cli.manifest import load_manifest, lookup_formula, parse_requirement
from core.errors import (
    BudgetExceeded,
    InconsistentTable,
    InvalidCondition,
    NotFoundUpTo,
    ParseError,
    StageAborted,
    UnknownLabel,
)
from core.reader import read
from core.syntax import parse_finset, parse_set
from formula.ast import free_count
from formula.classes import desugar
from formula.syntax import print_formula
from forcing.approx import approx_forces, least_sigma2_index
from forcing.budgets import Budgets
from forcing.conditions import Condition, admit
from forcing.families import instance
from forcing.demos import cohesive_demo, cone_demo, dominate_demo, toy_functionals
from forcing.fusion import cone_report, fusion_run, stage_certificates
from forcing.generic import generic_build
from forcing.handlers import ConeHandler, ConstantHandler, StarFusionHandler
from forcing.locality import DomainKilled, Localized, localize
from forcing.pi1 import ForcedUpTo, Refuted, forces_skolem, pi1_forces, recheck_refuted, refutes_herbrand
from forcing.pi2 import pi2_decide
from forcing.pi3 import pi3_witness
from forcing.verify import verify_forced, verify_run
from names.syntax import parse_name
from skolem.compile import compile_bounded
from skolem.templates import herbrandize, skolemize
from skolem.witnesses import uniformize_sigma1, witness_skolem
from submeasure.checks import fin_generated_check
from submeasure.mazur import mazur_eval, mazur_partition, mazur_theta
from submeasure.syntax import parse_submeasure, parse_tree

tracer = trace.get_tracer("cli")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNKNOWN = 2

INPUT_ERRORS = (ParseError, UnknownLabel, InconsistentTable, InvalidCondition, ValueError, click.UsageError)
BUDGET_ERRORS = (BudgetExceeded, NotFoundUpTo)


@dataclass
class Run:
    command: str
    budgets: Budgets
    env: dict
    verify: bool
    timing: bool
    out: str | None
    log: EventLog | None = None

    @classmethod
    def from_options(cls, command: str, options: dict) -> "Run":
        manifest = load_manifest(options.pop("manifest"))
        if manifest.command is not None and manifest.command != command:
            raise click.UsageError(f"manifest is for '{manifest.command}', not '{command}'")
        budgets = manifest.apply(Budgets())
        flags = {k: options.pop(k) for k in ("depth", "horizon", "window", "stages", "seed", "dp")}
        budgets = replace(budgets, **{k: v for k, v in flags.items() if v is not None})
        return cls(
            command=command,
            budgets=budgets,
            env=manifest.env,
            verify=options.pop("verify"),
            timing=options.pop("timing"),
            out=options.pop("out") or manifest.out,
        )

    def condition(self, stem: str, envelope: str, mu: str) -> Condition:
        return admit(
            parse_finset(stem, self.env),
            parse_set(envelope, self.env),
            parse_submeasure(mu, self.env),
            self.budgets,
        )

    def checked(self, checks) -> int:
        """Log --verify results; EXIT_UNKNOWN when any check failed."""
        checks = list(checks)
        failed = [c for c in checks if not c.ok]
        self.log.emit("verify", checks=[c.payload() for c in checks], failed=len(failed))
        click.echo(f"verify: {len(checks) - len(failed)}/{len(checks)} certificates re-checked")
        return EXIT_UNKNOWN if failed else EXIT_OK


def run_options(f):
    options = [
        click.option("--depth", type=int, default=None, help="Oracle string depth L."),
        click.option("--horizon", type=int, default=None, help="Envelope elements scanned by measure checks."),
        click.option("--window", type=int, default=None, help="Probe and envelope-search window."),
        click.option("--stages", type=int, default=None, help="Stages of fusion and generic runs."),
        click.option("--seed", type=int, default=None, help="Seed for random probe sets."),
        click.option("--budget-dp", "dp", type=int, default=None, help="Largest set the subset DP accepts."),
        click.option("--verify", is_flag=True, help="Re-check every emitted certificate from definitions."),
        click.option("--timing", is_flag=True, help="Record elapsed milliseconds per stage."),
        click.option("--manifest", type=click.Path(exists=True, dir_okay=False), default=None),
        click.option("--out", type=click.Path(dir_okay=False), default=None, help="JSON-lines event log."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def condition_options(f):
    f = click.option("--mu", default="(card)", show_default=True, help="Submeasure of the condition.")(f)
    f = click.option("--envelope", default="(nat)", show_default=True, help="Envelope A.")(f)
    f = click.option("--stem", default="(fin)", show_default=True, help="Stem a.")(f)
    return f


def guarded(command: str):
    """Builds the Run, opens the event log and maps failures to exit codes."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(**kwargs):
            code = EXIT_OK
            try:
                ctx = Run.from_options(command, kwargs)
                with open_log(ctx.out) as log, tracer.start_as_current_span(command) as span:
                    ctx.log = log
                    log.emit("run", command=command, budgets=ctx.budgets.payload())
                    try:
                        code = fn(ctx, **kwargs) or EXIT_OK
                    except StageAborted as e:
                        span.record_exception(e)
                        span.set_status(trace.Status(trace.StatusCode.ERROR))
                        if e.state is not None:
                            log.records(e.state["records"])
                        log.emit("aborted", stage=e.stage, reason=e.reason)
                        diagnostic(f"aborted: {e}")
                        code = EXIT_UNKNOWN
                    except BUDGET_ERRORS as e:
                        span.record_exception(e)
                        log.emit("exhausted", reason=str(e))
                        diagnostic(f"budget: {e}")
                        code = EXIT_UNKNOWN
                    log.emit("done", exit=code)
            except UnknownLabel as e:
                diagnostic(f"input error: undefined label '{e.label}'")
                code = EXIT_INPUT
            except INPUT_ERRORS as e:
                diagnostic(f"input error: {e}")
                code = EXIT_INPUT
            click.get_current_context().exit(code)

        return run

    return wrap


@click.group()
def workbench():
    """F_σ-Mathias forcing workbench."""


# ---- Submeasures ----

@workbench.command("eval-sub")
@click.option("--mu", required=True, help="Submeasure expression or label.")
@click.option("--x", "x", required=True, help="Finite set, e.g. (fin 0 1 2).")
@run_options
@guarded("eval-sub")
def eval_sub(run: Run, mu, x):
    measure = parse_submeasure(mu, run.env)
    finite = parse_finset(x, run.env)
    value = measure.eval(finite, run.budgets.dp)
    run.log.emit("value", measure=measure.key, x=list(finite), value=value)
    click.echo(value)


@workbench.command("mazur")
@click.option("--trees", required=True, help="Tree specifications, e.g. \"(subsets (prog 0 2)) (cylinder 2 \\\"10\\\")\".")
@click.option("--x", "x", required=True)
@run_options
@guarded("mazur")
def mazur(run: Run, trees, x):
    family = tuple(parse_tree(t, run.env) for t in read(trees))
    finite = parse_finset(x, run.env)
    theta = mazur_theta(family, finite)
    value = mazur_eval(family, finite, run.budgets.dp)
    pieces = mazur_partition(family, finite, run.budgets.dp)
    run.log.emit("mazur", x=list(finite), theta=theta, value=value, partition=[list(p) for p in pieces])
    click.echo(f"theta {theta}")
    click.echo(f"value {value}")
    click.echo("partition " + " ".join(p.describe() for p in pieces))


@workbench.command("meet-check")
@click.option("--mu", required=True)
@click.option("--nu", required=True)
@click.option("--set", "set_", default="(nat)", show_default=True, help="A; its first horizon elements are split.")
@run_options
@guarded("meet-check")
def meet_check(run: Run, mu, nu, set_):
    report = fin_generated_check(
        parse_submeasure(mu, run.env),
        parse_submeasure(nu, run.env),
        parse_set(set_, run.env),
        run.budgets.horizon,
        run.budgets.dp,
    )
    run.log.emit("meet", **report.payload())
    click.echo(f"split {report.left.describe()} {report.right.describe()} value {report.value}")
    click.echo(f"meet {report.meet_value} {'agrees' if report.agrees else 'DISAGREES'}")
    return EXIT_OK if report.agrees else EXIT_UNKNOWN


# ---- Formulas and witnesses ----

@workbench.command("compile")
@click.option("--formula", required=True, help="Bounded formula or label.")
@run_options
@guarded("compile")
def compile_formula(run: Run, formula):
    phi = lookup_formula(formula, run.env)
    name = compile_bounded(phi)
    run.log.emit("compiled", formula=print_formula(phi), name=name.key)
    click.echo(name.describe())


def _template(run: Run, formula: str, transform) -> None:
    phi = lookup_formula(formula, run.env)
    template = transform(phi)
    body = print_formula(template.body)
    run.log.emit("template", form=template.form, body=body, trace=list(template.trace))
    click.echo(body)
    for line in template.trace:
        click.echo(f"  {line}")


@workbench.command("skolemize")
@click.option("--formula", required=True)
@run_options
@guarded("skolemize")
def skolemize_cmd(run: Run, formula):
    _template(run, formula, skolemize)


@workbench.command("herbrandize")
@click.option("--formula", required=True)
@run_options
@guarded("herbrandize")
def herbrandize_cmd(run: Run, formula):
    _template(run, formula, herbrandize)


@workbench.command("witness")
@click.option("--formula", required=True)
@click.option(
    "--kind",
    type=click.Choice(["skolem", "uniformize", "pi3"]),
    default="skolem",
    show_default=True,
    help="Skolem witness, Σ⁰₁ uniformization, or the Π⁰₃ witness below a condition.",
)
@condition_options
@run_options
@guarded("witness")
def witness(run: Run, formula, kind, stem, envelope, mu):
    phi = lookup_formula(formula, run.env)
    lines: list[str] = []
    if kind == "skolem":
        name = witness_skolem(phi, trace_lines=lines)
    elif kind == "uniformize":
        name = uniformize_sigma1(phi)
    else:
        c = run.condition(stem, envelope, mu)
        name = pi3_witness(c.a, c.A, phi, run.budgets)
    run.log.emit("witness", kind=kind, arity=name.arity, name=name.key, trace=lines)
    click.echo(name.describe())
    for line in lines:
        click.echo(line)


# ---- Forcing ----

@workbench.command("force-pi1")
@click.option("--formula", required=True, help="Closed Π⁰₁ sentence, or θ with --skolem/--herbrand.")
@click.option("--skolem", "skolem_witness", default=None, help="Certify c ⊩ θ_S(W) for this unary name W.")
@click.option("--herbrand", "herbrand_witness", default=None, help="Refute θ_H(W) for this unary name W.")
@condition_options
@run_options
@guarded("force-pi1")
def force_pi1(run: Run, formula, skolem_witness, herbrand_witness, stem, envelope, mu):
    c = run.condition(stem, envelope, mu)
    phi = lookup_formula(formula, run.env)
    if skolem_witness is not None:
        verdict = forces_skolem(c, phi, parse_name(skolem_witness, run.env), run.budgets)
    elif herbrand_witness is not None:
        verdict = refutes_herbrand(c, phi, parse_name(herbrand_witness, run.env), run.budgets)
    else:
        verdict = pi1_forces(c, phi, run.budgets)
    run.log.emit("verdict", condition=c.payload(), verdict=verdict.payload())
    click.echo(verdict.kind if isinstance(verdict, ForcedUpTo) else f"refuted at {verdict.tau} {list(verdict.args)}")
    if run.verify and isinstance(verdict, Refuted) and skolem_witness is None and herbrand_witness is None:
        ok = recheck_refuted(c, phi, verdict)
        run.log.emit("verify", checks=[{"kind": "refuted", "ok": ok}], failed=int(not ok))
        return EXIT_OK if ok else EXIT_UNKNOWN
    return EXIT_OK


@workbench.command("decide-pi2")
@click.option("--family", required=True, help="Π⁰₁ family φ(w) in one free variable.")
@condition_options
@run_options
@guarded("decide-pi2")
def decide_pi2(run: Run, family, stem, envelope, mu):
    c = run.condition(stem, envelope, mu)
    phi = lookup_formula(family, run.env)
    report = pi2_decide(c, phi, run.budgets)
    run.log.emit("decision", **report.payload())
    click.echo(report.branch + (f" y={report.y}" if report.y is not None else ""))
    if report.branch == "unknown":
        return EXIT_UNKNOWN
    if run.verify:
        if report.branch == "forall-not":
            checks = [recheck_refuted(report.condition, instance(phi, w), r) for w, r in enumerate(report.sweep)]
        else:
            piece = report.condition
            sentence = instance(phi, report.y)
            checks = [verify_forced(piece.a, piece.A, sentence, report.verdict.payload())]
        run.log.emit("verify", checks=[{"kind": report.branch, "ok": ok} for ok in checks], failed=checks.count(False))
        return EXIT_OK if all(checks) else EXIT_UNKNOWN
    return EXIT_OK


@workbench.command("approx")
@click.option("--family", required=True, help="Π⁰₁ family φ(w); ∃w φ(w) is approximated.")
@click.option("--least-index", type=int, default=None, help="Instead: least x ≤ N bounding μ ∧ ν_0 ∧ … ∧ ν_x.")
@condition_options
@run_options
@guarded("approx")
def approx(run: Run, family, least_index, stem, envelope, mu):
    c = run.condition(stem, envelope, mu)
    phi = lookup_formula(family, run.env)
    if least_index is not None:
        report = least_sigma2_index(c, phi, least_index, run.budgets)
        run.log.emit("least-index", **report.payload())
        click.echo(f"least {report.least}")
        return EXIT_OK if report.least is not None else EXIT_UNKNOWN
    found = approx_forces(c, phi, run.budgets)
    run.log.emit("approx", **found.payload())
    click.echo(f"y={found.y} removed={found.removed.describe()}")
    if run.verify:
        ok = isinstance(pi1_forces(found.condition, instance(phi, found.y), run.budgets), ForcedUpTo)
        run.log.emit("verify", checks=[{"kind": "forced", "ok": ok}], failed=int(not ok))
        return EXIT_OK if ok else EXIT_UNKNOWN
    return EXIT_OK


@workbench.command("localize")
@click.option("--name", "name_", required=True, help="Partial name F.")
@condition_options
@run_options
@guarded("localize")
def localize_cmd(run: Run, name_, stem, envelope, mu):
    c = run.condition(stem, envelope, mu)
    verdict = localize(c, parse_name(name_, run.env), run.budgets)
    run.log.emit("locality", **verdict.payload())
    click.echo(verdict.kind)
    return EXIT_OK if isinstance(verdict, (Localized, DomainKilled)) else EXIT_UNKNOWN


# ---- Staged constructions ----

def _finish(run: Run, state, extra_checks=()) -> int:
    run.log.records(state["records"])
    final = state["history"][-1]
    run.log.emit("final", stage=state["stage"], condition=final.payload())
    click.echo(f"{state['stage']} stages, stem {final.a.describe()}")
    if run.verify:
        return run.checked([*verify_run(state), *extra_checks])
    return EXIT_OK


@workbench.command("fusion")
@click.option("--handler", type=click.Choice(["constant", "star", "cone"]), default="constant", show_default=True)
@click.option("--family", default=None, help="Π⁰₁ family φ(x̄, w) for the star handler.")
@click.option("--functional", "functionals", multiple=True, help="Unary names for the cone handler.")
@condition_options
@run_options
@guarded("fusion")
def fusion(run: Run, handler, family, functionals, stem, envelope, mu):
    c = run.condition(stem, envelope, mu)
    if handler == "star":
        if family is None:
            raise click.UsageError("--handler star needs --family")
        phi = lookup_formula(family, run.env)
        chosen = StarFusionHandler(phi, max(free_count(desugar(phi)) - 1, 0))
    elif handler == "cone":
        names = [parse_name(f, run.env) for f in functionals] or toy_functionals()
        chosen = ConeHandler(names)
    else:
        chosen = ConstantHandler()
    state = fusion_run(c, chosen, run.budgets, run.timing)
    if handler == "cone":
        run.log.emit("cone", **cone_report(state).payload())
    return _finish(run, state, stage_certificates(state) if run.verify else ())


@workbench.command("generic")
@click.option("--requirement", "requirements", multiple=True, required=True,
              help="(measure [s]) | (decide SET) | (pi2 FAMILY) | (dominate [table affine])")
@condition_options
@run_options
@guarded("generic")
def generic(run: Run, requirements, stem, envelope, mu):
    c = run.condition(stem, envelope, mu)
    specs = [parse_requirement(r, run.env) for r in requirements]
    state = generic_build(specs, run.budgets, c, run.timing)
    return _finish(run, state)


@workbench.group("demo")
def demo():
    """Worked constructions: cohesive, dominate, cone."""


@demo.command("cohesive")
@click.option("--sets", required=True, help="Periodic sets, e.g. \"(prog 0 2) (prog 0 3)\".")
@run_options
@guarded("demo cohesive")
def demo_cohesive(run: Run, sets):
    state, report = cohesive_demo([parse_set(s, run.env) for s in read(sets)], run.budgets, run.timing)
    run.log.emit("cohesive", **report.payload())
    code = _finish(run, state)
    for entry in report.entries:
        click.echo(f"{entry['set']} {entry['side']} stable={entry['stable']}")
    return code if report.verified else EXIT_UNKNOWN


@demo.command("dominate")
@run_options
@guarded("demo dominate")
def demo_dominate(run: Run):
    state, report = dominate_demo(run.budgets, timing=run.timing)
    run.log.emit("dominate", **report.payload())
    code = _finish(run, state)
    click.echo(f"F {report.growth}")
    click.echo(f"lags {list(report.lags)} below={report.below}")
    return code


@demo.command("cone")
@click.option("--functional", "functionals", multiple=True, help="Unary names; the toy family by default.")
@run_options
@guarded("demo cone")
def demo_cone(run: Run, functionals):
    names = [parse_name(f, run.env) for f in functionals] or None
    state, report = cone_demo(run.budgets, names, run.timing)
    run.log.emit("cone", **report.payload())
    code = _finish(run, state, stage_certificates(state) if run.verify else ())
    click.echo(f"cone report verified={report.verified}")
    return code if report.verified else EXIT_UNKNOWN


def main(argv=None) -> int:
    try:
        code = workbench.main(args=argv, prog_name="workbench", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_INPUT
    except click.Abort:
        return EXIT_INPUT
    return code or EXIT_OK
