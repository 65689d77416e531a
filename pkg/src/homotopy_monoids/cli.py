"""
Command-line interface for homotopy-monoids.
"""

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import click
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from .barcat import bar_ccc, em, hocolim
from .consequences import hocolim_preservation_check, james, james_tensor_prediction
from .core import (
    DEFAULT_LETTERS,
    DEFAULT_MAXDIM,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    DENSE_THRESHOLD,
    CheckResult,
    Coefficients,
    Construction,
    FormatParseError,
    HomotopyError,
    Mode,
    OutputFormat,
    PreconditionError,
    RangeError,
    RunConfig,
    Suite,
)
from .exactalg import ChainComplex, HomologyResult, homology_all, parse_rat
from .formats import Corpus, dump_path, dump_value, dump_wtuple, parse_file, parse_wtuple
from .moorezeta import ev, zeta, zeta_loop
from .simplicial import FinMonoid, FinSemigroup, SimplicialSet, chains, nerve, semigroup_nerve, sphere, suspension
from .utils import (
    console,
    err_console,
    fixture_paths,
    load_project_config,
    log_error,
    log_info,
    log_success,
    log_warning,
    report_document,
    validate_report,
)
from .verify import SuiteContext, run_suite
from .wconstruct import WTuple, eps_prime, epsilon, factorize, iota, shrink, wbar_components, wbar_complex, wmul

EXIT_OK, EXIT_FAILED, EXIT_PARSE = 0, 1, 2
DEFAULT_EVAL_GROUND = "free2"


def load_corpus(extra: Optional[str] = None) -> Corpus:
    """The shipped fixtures plus any files in ``extra``"""
    corpus = Corpus()
    for path in fixture_paths(extra):
        corpus = corpus.merge(parse_file(path))
    return corpus


@dataclass
class Inputs:
    """The object flags of one invocation; each is a fixture name or a file path"""

    monoid: Optional[str] = None
    semigroup: Optional[str] = None
    category: Optional[str] = None
    diagram: Optional[str] = None
    sphere: Optional[int] = None

    def as_list(self) -> List[str]:
        pairs = [("monoid", self.monoid), ("semigroup", self.semigroup), ("category", self.category)]
        pairs += [("diagram", self.diagram), ("sphere", None if self.sphere is None else str(self.sphere))]
        return [f"{k}={v}" for k, v in pairs if v is not None]


def _resolve(corpus: Corpus, kind: str, value: str) -> Tuple[Corpus, str]:
    """Look a name up, or read the first block of that kind from a file"""
    path = Path(value)
    if not path.is_file():
        return corpus, value
    loaded = parse_file(path)
    table: Dict[str, Any] = getattr(loaded, f"{kind}s")
    if kind == "semigroup" and not table:
        table = loaded.monoids
    if kind == "category" and not table:
        table = loaded.monoids
    if not table:
        raise FormatParseError(f"no {kind} block in file", str(path), 1, 1)
    return corpus.merge(loaded), next(iter(table))


def _monoid(corpus: Corpus, inputs: Inputs) -> FinMonoid:
    if inputs.monoid is None:
        raise PreconditionError("this construction needs --monoid")
    corpus, name = _resolve(corpus, "monoid", inputs.monoid)
    return corpus.monoid(name)


def _ground(corpus: Corpus, inputs: Inputs) -> FinSemigroup:
    if inputs.semigroup is not None:
        corpus, name = _resolve(corpus, "semigroup", inputs.semigroup)
        return corpus.semigroup(name)
    if inputs.monoid is not None:
        return _monoid(corpus, inputs)
    raise PreconditionError("this construction needs --semigroup or --monoid")


def _based_space(corpus: Corpus, inputs: Inputs, top: int) -> SimplicialSet:
    if inputs.sphere is not None:
        return sphere(inputs.sphere, top)
    if inputs.monoid is not None:
        return nerve(_monoid(corpus, inputs), top)
    raise PreconditionError("this construction needs --sphere or --monoid")


def build_targets(
    construction: Construction, corpus: Corpus, inputs: Inputs, maxdim: int, letters: int
) -> List[Tuple[str, ChainComplex, int]]:
    """
    Chain complexes to take homology of, with the top degree to report.

    Simplicial targets are built one degree above ``maxdim`` so that the
    reported top degree is not a truncation artefact.
    """
    top = maxdim + 1
    if construction is Construction.NERVE:
        if inputs.category is not None:
            corpus, name = _resolve(corpus, "category", inputs.category)
            X = nerve(corpus.category(name), top)
        elif inputs.monoid is not None:
            X = nerve(_monoid(corpus, inputs), top)
        else:
            X = semigroup_nerve(_ground(corpus, inputs), top)
    elif construction is Construction.FAT_NERVE:
        X = semigroup_nerve(_ground(corpus, inputs), top)
    elif construction is Construction.EM:
        X = em(_monoid(corpus, inputs), top)
    elif construction is Construction.BAR:
        if inputs.category is not None:
            corpus, name = _resolve(corpus, "category", inputs.category)
            C = corpus.category(name)
        else:
            C = _monoid(corpus, inputs).as_category()
        bars = bar_ccc(C, top)
        return [(bars.at(key).name, chains(bars.at(key)), maxdim) for key in sorted(bars.values)]
    elif construction is Construction.HOCOLIM:
        if inputs.diagram is None:
            raise PreconditionError("hocolim needs --diagram")
        corpus, name = _resolve(corpus, "diagram", inputs.diagram)
        X = hocolim(corpus.diagram(name, top), top)
    elif construction is Construction.WBAR:
        G = _ground(corpus, inputs)
        return [(f"W{G.name} L={letters}", wbar_complex(G, letters), letters - 1)]
    elif construction is Construction.JAMES:
        X = james(_based_space(corpus, inputs, top), letters, top)
    else:
        X = suspension(_based_space(corpus, inputs, top))
    return [(X.name, chains(X), maxdim)]


# ---------------------------------------------------------------------------
# Output


def _homology_json(name: str, hs: List[HomologyResult]) -> Dict[str, Any]:
    return {
        "target": name,
        "homology": [{"degree": h.degree, "betti": h.betti, "torsion": list(h.torsion)} for h in hs],
    }


def emit_homology(results: List[Tuple[str, List[HomologyResult]]], fmt: OutputFormat, title: str) -> None:
    if fmt is OutputFormat.JSON:
        click.echo(json.dumps([_homology_json(name, hs) for name, hs in results], indent=2))
        return
    if fmt is OutputFormat.LINES:
        for name, hs in results:
            prefix = f"{name} " if len(results) > 1 else ""
            for h in hs:
                click.echo(f"{prefix}H{h.degree} {h}")
        return
    table = Table(title=title)
    if len(results) > 1:
        table.add_column("Target", style="cyan")
    table.add_column("Degree", style="magenta", justify="right")
    table.add_column("Homology", style="green")
    for name, hs in results:
        for h in hs:
            row = [str(h.degree), str(h)]
            table.add_row(*([name] + row if len(results) > 1 else row))
    console.print(table)


def target_homology(
    targets: List[Tuple[str, ChainComplex, int]], config: RunConfig
) -> List[Tuple[str, List[HomologyResult]]]:
    return [
        (name, homology_all(C, config.coeffs, config.prime, upto=top, dense_threshold=config.dense_threshold))
        for name, C, top in targets
    ]


def decor(fmt: OutputFormat) -> Console:
    """Console for decorations; stderr whenever stdout is machine-readable"""
    return console if fmt is OutputFormat.TEXT else err_console


# ---------------------------------------------------------------------------
# Option plumbing


def _coeffs_callback(ctx: click.Context, param: click.Parameter, value: str) -> Tuple[Coefficients, Optional[int]]:
    try:
        return RunConfig.parse_coeffs(value)
    except RangeError as e:
        raise click.BadParameter(str(e)) from e


def input_options(fn: Callable) -> Callable:
    fn = click.option("--sphere", type=int, help="The based sphere S^N")(fn)
    fn = click.option("--diagram", help="Diagram fixture name or file")(fn)
    fn = click.option("--category", help="Category fixture name or file")(fn)
    fn = click.option("--semigroup", help="Semigroup fixture name or file")(fn)
    fn = click.option("--monoid", help="Monoid fixture name or file")(fn)
    return fn


def common_options(fn: Callable) -> Callable:
    fn = click.option(
        "--format",
        "output_format",
        type=click.Choice([f.value for f in OutputFormat]),
        default=OutputFormat.TEXT.value,
        help="Output format",
    )(fn)
    fn = click.option("--letters", "-L", type=int, help=f"Letter/word-length bound (default {DEFAULT_LETTERS})")(fn)
    fn = click.option("--maxdim", type=int, help=f"Top degree (default {DEFAULT_MAXDIM})")(fn)
    return fn


def make_config(ctx: click.Context, command: str, inputs: Inputs, **values: Any) -> RunConfig:
    """Merge flags over ``[tool.homotopy-monoids]`` over the built-in defaults"""
    project = ctx.obj or {}
    defaults = {
        "maxdim": project.get("maxdim", DEFAULT_MAXDIM),
        "letters": project.get("letters", DEFAULT_LETTERS),
        "seed": project.get("seed", DEFAULT_SEED),
        "trials": project.get("trials", DEFAULT_TRIALS),
        "dense_threshold": project.get("dense-threshold", DENSE_THRESHOLD),
    }
    settings = {**defaults, **{k: v for k, v in values.items() if v is not None}}
    try:
        return RunConfig(command=command, inputs=inputs.as_list(), **settings)
    except ValidationError as e:
        raise click.UsageError(str(e)) from e


def guarded(ctx: click.Context, body: Callable[[], int]) -> None:
    """Run a command body and map errors onto the 0/1/2 exit codes"""
    try:
        code = body()
    except FormatParseError as e:
        log_error(str(e))
        code = EXIT_PARSE
    except HomotopyError as e:
        log_error(str(e))
        code = EXIT_FAILED
    ctx.exit(code)


# ---------------------------------------------------------------------------
# Commands


@click.group(help="Homotopy theory of finite monoids: nerves, bar constructions, W-bar and Moore loops")
@click.version_option(package_name="homotopy-monoids")
@click.option("--fixtures", type=click.Path(exists=True, file_okay=False), help="Extra fixture directory")
@click.pass_context
def cli(ctx: click.Context, fixtures: Optional[str]) -> None:
    """Main CLI entry point."""
    settings = load_project_config()
    if fixtures:
        settings["fixtures"] = fixtures
    ctx.obj = settings


def _corpus(ctx: click.Context) -> Corpus:
    return load_corpus((ctx.obj or {}).get("fixtures"))


@cli.command(help="Homology of a construction, per degree")
@input_options
@click.option(
    "--construction",
    "-c",
    type=click.Choice([c.value for c in Construction]),
    default=Construction.NERVE.value,
    help="Which space to build",
)
@click.option("--coeffs", default="Z", callback=_coeffs_callback, help="Z, Q or F<p> with p prime (e.g. F3)")
@common_options
@click.pass_context
def homology(ctx, monoid, semigroup, category, diagram, sphere, construction, coeffs, maxdim, letters, output_format):
    """Print Betti numbers and torsion per degree."""
    inputs = Inputs(monoid, semigroup, category, diagram, sphere)
    kind, prime = coeffs
    config = make_config(
        ctx, "homology", inputs, maxdim=maxdim, letters=letters, coeffs=kind, prime=prime, output_format=output_format
    )

    def body() -> int:
        fmt = config.output_format
        corpus = _corpus(ctx)
        with decor(fmt).status("[bold green]Computing homology...[/]"):
            targets = build_targets(Construction(construction), corpus, inputs, config.maxdim, config.letters)
            results = target_homology(targets, config)
        emit_homology(results, fmt, f"{construction} homology over {coeffs_label(config)}")
        return EXIT_OK

    guarded(ctx, body)


def coeffs_label(config: RunConfig) -> str:
    if config.coeffs is Coefficients.FP:
        return f"F{config.prime}"
    return config.coeffs.value


@cli.command(help="Run a named verification suite")
@click.option("--suite", type=click.Choice([s.value for s in Suite]), default=Suite.ALL.value, help="Suite to run")
@click.option("--trials", type=int, help=f"Randomized trials per check (default {DEFAULT_TRIALS})")
@click.option("--seed", type=int, help=f"Seed of the trial generator (default {DEFAULT_SEED})")
@common_options
@click.pass_context
def verify(ctx, suite, trials, seed, maxdim, letters, output_format):
    """Print one PASS/FAIL line per check; exit 1 if any check fails."""
    config = make_config(
        ctx,
        "verify",
        Inputs(),
        suite=suite,
        trials=trials,
        seed=seed,
        maxdim=maxdim,
        letters=letters,
        output_format=output_format,
    )

    def body() -> int:
        fmt = config.output_format
        suite_ctx = SuiteContext(_corpus(ctx), config.seed, config.trials, config.maxdim, config.letters)
        with decor(fmt).status(f"[bold green]Running {config.suite.value}...[/]"):
            results = run_suite(config.suite, suite_ctx)
        failed = [r for r in results if not r.passed]
        if fmt is OutputFormat.JSON:
            report = report_document(config.seed, config.suite.value, results)
            is_valid, messages = validate_report(report)
            for msg in messages:
                log_warning(msg)
            click.echo(json.dumps(report, indent=2))
            if not is_valid:
                return EXIT_FAILED
        else:
            click.echo(f"seed {config.seed}")
            for r in results:
                click.echo(r.line())
        if fmt is OutputFormat.TEXT:
            summarize(results)
        return EXIT_FAILED if failed else EXIT_OK

    guarded(ctx, body)


def summarize(results: List[CheckResult]) -> None:
    failed = sum(1 for r in results if not r.passed)
    if failed:
        log_error(f"{failed} of {len(results)} checks failed")
    else:
        log_success(f"All {len(results)} checks passed")


TOKEN = re.compile(r"\([^()]*\)|[^\s()]+")


def evaluate(expression: str, ground: FinSemigroup, mode: Mode) -> str:
    """
    Evaluate one expression over W-bar/W of ``ground``.

    Operations: ``wmul A B``, ``epsilon A``, ``shrink A s``, ``iota x``,
    ``epsprime A``, ``factor A``, ``zeta A``, ``loop A`` and
    ``ev (t0 ... tn) A1 ... An``.
    """
    tokens = TOKEN.findall(expression)
    if "".join("".join(tokens).split()) != "".join(expression.split()) or not tokens:
        raise FormatParseError("unbalanced or empty expression", "<expr>", 1, 1)
    op, args = tokens[0], tokens[1:]

    def col(tok: str) -> int:
        return expression.find(tok) + 1

    def tup(tok: str, m: Mode = mode) -> WTuple:
        if not tok.startswith("("):
            raise FormatParseError(f"expected a tuple, got {tok!r}", "<expr>", 1, col(tok))
        try:
            return parse_wtuple(tok, ground, m, "<expr>")
        except FormatParseError as e:
            raise FormatParseError(e.message, "<expr>", 1, col(tok)) from e

    def arity(n: int) -> None:
        if len(args) != n:
            raise FormatParseError(f"{op} takes {n} argument(s), got {len(args)}", "<expr>", 1, 1)

    if op == "wmul":
        arity(2)
        return dump_wtuple(wmul(tup(args[0]), tup(args[1])))
    if op == "epsilon":
        arity(1)
        return ground.elements[epsilon(tup(args[0]))]
    if op == "shrink":
        arity(2)
        try:
            s = parse_rat(args[1])
        except ValueError as e:
            raise FormatParseError(str(e), "<expr>", 1, col(args[1])) from e
        return dump_wtuple(shrink(tup(args[0]), s))
    if op == "iota":
        arity(1)
        if args[0] not in ground.elements:
            raise FormatParseError(f"{args[0]!r} is not an element of {ground.name}", "<expr>", 1, col(args[0]))
        return dump_wtuple(iota(ground, ground.elements.index(args[0]), mode))
    if op == "epsprime":
        arity(1)
        return dump_wtuple(eps_prime(tup(args[0], Mode.SEMIGROUP)))
    if op == "factor":
        arity(1)
        return " ".join(dump_wtuple(f) for f in factorize(tup(args[0])))
    if op == "zeta":
        arity(1)
        return dump_path(zeta(tup(args[0], Mode.SEMIGROUP)).path).rstrip("\n")
    if op == "loop":
        arity(1)
        return dump_path(zeta_loop(tup(args[0], Mode.SEMIGROUP))).rstrip("\n")
    if op == "ev":
        if not args or not args[0].startswith("("):
            raise FormatParseError("ev takes (t0 ... tn) followed by n tuples", "<expr>", 1, 1)
        try:
            t = [parse_rat(x) for x in args[0][1:-1].split()]
        except ValueError as e:
            raise FormatParseError(str(e), "<expr>", 1, col(args[0])) from e
        loops = [zeta_loop(tup(a, Mode.SEMIGROUP)) for a in args[1:]]
        if not loops:
            raise FormatParseError("ev needs at least one tuple", "<expr>", 1, 1)
        return dump_value(ev(loops, t))
    raise FormatParseError(f"unknown operation {op!r}", "<expr>", 1, 1)


@cli.command(name="eval", help="Evaluate an expression over W-bar or W")
@click.argument("expression")
@click.option("--monoid", help="Ground monoid fixture name or file")
@click.option("--semigroup", help=f"Ground semigroup fixture name or file (default {DEFAULT_EVAL_GROUND})")
@click.option(
    "--mode",
    type=click.Choice([m.value for m in Mode]),
    default=Mode.SEMIGROUP.value,
    help="wbar (semigroup) or w (monoid) normal forms",
)
@click.pass_context
def eval_command(ctx, expression, monoid, semigroup, mode):
    """Print the exact serialized result."""
    inputs = Inputs(monoid=monoid, semigroup=semigroup)
    if monoid is None and semigroup is None:
        inputs.semigroup = DEFAULT_EVAL_GROUND
    make_config(ctx, "eval", inputs)

    def body() -> int:
        ground = _ground(_corpus(ctx), inputs)
        click.echo(evaluate(expression, ground, Mode(mode)))
        return EXIT_OK

    guarded(ctx, body)


@cli.command(name="hocolim", help="Homology of a homotopy colimit, or the wedge comparison for two groups")
@click.option("--diagram", help="Diagram fixture name or file")
@click.option("--wedge", nargs=2, help="Two group fixtures G1 G2: compare hocolim(BG1 <- * -> BG2)")
@click.option("--coeffs", default="Z", callback=_coeffs_callback, help="Z, Q or F<p> with p prime (e.g. F3)")
@common_options
@click.pass_context
def hocolim_command(ctx, diagram, wedge, coeffs, maxdim, letters, output_format):
    """Print hocolim homology, or PASS/FAIL lines for the wedge comparison."""
    inputs = Inputs(diagram=diagram)
    kind, prime = coeffs
    config = make_config(
        ctx, "hocolim", inputs, maxdim=maxdim, letters=letters, coeffs=kind, prime=prime, output_format=output_format
    )

    def body() -> int:
        corpus = _corpus(ctx)
        fmt = config.output_format
        if wedge:
            G1, G2 = (_monoid(corpus, Inputs(monoid=g)) for g in wedge)
            report = hocolim_preservation_check(G1, G2, min(config.maxdim, 4) or 1)
            for r in report.checks():
                click.echo(r.line())
            return EXIT_OK if report.passed else EXIT_FAILED
        if diagram is None:
            raise PreconditionError("give --diagram or --wedge")
        with decor(fmt).status("[bold green]Building the homotopy colimit...[/]"):
            targets = build_targets(Construction.HOCOLIM, corpus, inputs, config.maxdim, config.letters)
            results = target_homology(targets, config)
        emit_homology(results, fmt, f"hocolim homology over {coeffs_label(config)}")
        return EXIT_OK

    guarded(ctx, body)


@cli.command(name="james", help="Homology of the James stage J_L X against the smash-power prediction")
@click.option("--sphere", type=int, default=1, show_default=True, help="X = S^N")
@click.option("--monoid", help="X = BM instead of a sphere")
@common_options
@click.pass_context
def james_command(ctx, sphere, monoid, maxdim, letters, output_format):
    """Exit 1 when the rational Betti numbers disagree with the prediction."""
    inputs = Inputs(monoid=monoid, sphere=None if monoid else sphere)
    config = make_config(ctx, "james", inputs, maxdim=maxdim, letters=letters, output_format=output_format)

    def body() -> int:
        top = config.maxdim + 1
        fmt = config.output_format
        with decor(fmt).status("[bold green]Building the James construction...[/]"):
            X = _based_space(_corpus(ctx), inputs, top)
            J = james(X, config.letters, top)
            integral = homology_all(chains(J), upto=config.maxdim, dense_threshold=config.dense_threshold)
            rational = homology_all(chains(J), Coefficients.Q, upto=config.maxdim)
            predicted = james_tensor_prediction(X, config.letters, top)[: config.maxdim + 1]
        agree = [h.betti for h in rational] == [h.betti for h in predicted]
        if fmt is OutputFormat.TEXT:
            table = Table(title=f"{J.name}")
            table.add_column("Degree", style="magenta", justify="right")
            table.add_column("H(J_L X)", style="green")
            table.add_column("sum H~(X^k; Q)", style="cyan")
            for h, p in zip(integral, predicted):
                table.add_row(str(h.degree), str(h), f"Q^{p.betti}" if p.betti else "0")
            console.print(table)
            (log_success if agree else log_error)("prediction " + ("matches" if agree else "differs"))
        else:
            emit_homology([(J.name, integral)], fmt, J.name)
        return EXIT_OK if agree else EXIT_FAILED

    guarded(ctx, body)


@cli.command(name="wbar", help="Cellular homology and components of the letter-bounded W-bar G")
@click.option("--semigroup", help="Semigroup fixture name or file")
@click.option("--monoid", help="Monoid fixture name or file")
@click.option("--coeffs", default="Z", callback=_coeffs_callback, help="Z, Q or F<p> with p prime (e.g. F3)")
@common_options
@click.pass_context
def wbar_command(ctx, semigroup, monoid, coeffs, maxdim, letters, output_format):
    """Print H_* of the cube complex and the words in each component."""
    inputs = Inputs(monoid=monoid, semigroup=semigroup)
    kind, prime = coeffs
    config = make_config(
        ctx, "wbar", inputs, maxdim=maxdim, letters=letters, coeffs=kind, prime=prime, output_format=output_format
    )

    def body() -> int:
        fmt = config.output_format
        G = _ground(_corpus(ctx), inputs)
        with decor(fmt).status("[bold green]Building cells...[/]"):
            hs = homology_all(
                wbar_complex(G, config.letters), config.coeffs, config.prime, dense_threshold=config.dense_threshold
            )
            components = wbar_components(G, config.letters)
        emit_homology([(f"W{G.name}", hs)], fmt, f"W-bar {G.name}, L = {config.letters}")
        if fmt is OutputFormat.TEXT:
            for comp in sorted(components, key=lambda c: min(c)):
                value = G.elements[G.product(min(comp))]
                log_info(f"component over {value}: {len(comp)} words")
        return EXIT_OK

    guarded(ctx, body)


def main():
    """Entry point for the command-line interface."""
    return cli()
