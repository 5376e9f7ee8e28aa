"""Operator command line: construct, validate, serve, list, skill, metrics.

Configuration precedence is file < flags < environment: values load from the
JSON config file (--config), individual flags override it, and AGENTMILL_*
environment variables override flags (AGENTMILL_REGISTRY_ROOT,
AGENTMILL_RUN_ROOT, AGENTMILL_MOCK, AGENTMILL_FORMAT).

Exit codes: 0 success, 2 usage, 3 validation findings, 4 construction
failure, 5 synthesis or provider failure, 6 runtime failure, 1 anything
else.
"""

from __future__ import annotations

import dataclasses
import json
import os
import sys
from pathlib import Path

import click

from agentmill.construct import (
    ConstructionConfig,
    ConstructionError,
    ProfileRegistry,
    Registries,
    ToolRegistry,
    construct,
    load_manifest,
    materialize,
    packaged_template_dir,
)
from agentmill.errors import AgentMillError
from agentmill.gateway.config import GatewayConfig
from agentmill.metrics import aggregate_score, classify, measure
from agentmill.profiles import (
    ProfileError,
    parse_details,
    parse_profile,
    serialize_profile,
    validate_profile,
)
from agentmill.skills import (
    LEVELS,
    SUBJECTS,
    SkillError,
    SkillLibrary,
    normalize_identifier,
    parse_skill,
    render_skill,
)
from agentmill.synthesis import (
    MockProvider,
    SynthesisConfig,
    SynthesisError,
    enrich_profile,
    generate_profile,
    load_provider,
)
from agentmill.runtime import SpawnError

EXIT_VALIDATION = 3
EXIT_CONSTRUCTION = 4
EXIT_SYNTHESIS = 5
EXIT_RUNTIME = 6


def _exit_code_for(exc: Exception) -> int:
    if isinstance(exc, (ProfileError, SkillError)):
        return EXIT_VALIDATION
    if isinstance(exc, ConstructionError):
        return EXIT_CONSTRUCTION
    if isinstance(exc, SynthesisError):
        return EXIT_SYNTHESIS
    if isinstance(exc, SpawnError):
        return EXIT_RUNTIME
    return 1


class Runtime:
    """Resolved CLI context shared by the subcommands."""

    def __init__(self, config: GatewayConfig, output_format: str, mock: bool) -> None:
        self.config = config
        self.format = output_format
        self.mock = mock

    @property
    def registry_root(self) -> Path:
        return Path(self.config.registry_root)

    def registries(self) -> Registries:
        root = self.registry_root
        return Registries(
            skills=SkillLibrary.open(root / "skills"),
            tools=ToolRegistry.open(root / "tools.json"),
            profiles=ProfileRegistry.open(root / "profiles"),
        )

    def construction(self) -> ConstructionConfig:
        template_dir = self.registry_root / "templates"
        if not template_dir.is_dir():
            template_dir = packaged_template_dir()
        return ConstructionConfig.at(self.registry_root, template_dir=template_dir)

    def provider(self):
        if self.mock:
            return MockProvider()
        return load_provider(self.config.provider)

    def emit(self, payload: dict, table: str) -> None:
        if self.format == "json":
            click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
        else:
            click.echo(table)


def _resolve(
    config_path: str | None,
    registry_root: str | None,
    output_format: str,
    mock: bool,
) -> Runtime:
    if config_path:
        config = GatewayConfig.from_file(Path(config_path))
    else:
        config = GatewayConfig.from_dict({}, base_dir=Path.cwd())

    if registry_root:
        config = dataclasses.replace(config, registry_root=Path(registry_root).resolve())
    if mock:
        config = dataclasses.replace(config, provider={"kind": "mock"})

    env = os.environ
    if env.get("AGENTMILL_REGISTRY_ROOT"):
        config = dataclasses.replace(
            config, registry_root=Path(env["AGENTMILL_REGISTRY_ROOT"]).resolve()
        )
    if env.get("AGENTMILL_RUN_ROOT"):
        config = dataclasses.replace(config, run_root=Path(env["AGENTMILL_RUN_ROOT"]).resolve())
    if env.get("AGENTMILL_MOCK"):
        mock = env["AGENTMILL_MOCK"] not in ("0", "false", "")
        if mock:
            config = dataclasses.replace(config, provider={"kind": "mock"})
    output_format = env.get("AGENTMILL_FORMAT", output_format)
    return Runtime(config, output_format, mock)


@click.group()
@click.option("--config", "config_path", type=click.Path(), help="JSON config file.")
@click.option("--registry-root", type=click.Path(), help="Registry root directory.")
@click.option("--format", "output_format", type=click.Choice(["table", "json"]), default="table")
@click.option("--mock", is_flag=True, help="Use the deterministic mock provider.")
@click.pass_context
def main(ctx: click.Context, config_path, registry_root, output_format, mock) -> None:
    """Profile-driven agent platform operations."""
    ctx.obj = _resolve(config_path, registry_root, output_format, mock)


@main.command("construct")
@click.argument("source")
@click.option("--dry-run", is_flag=True, help="Stop after the build plan.")
@click.option("--out", type=click.Path(), help="Workspace directory (must be empty or absent).")
@click.pass_obj
def cmd_construct(runtime: Runtime, source: str, dry_run: bool, out: str | None) -> None:
    """Build an agent from a one-sentence description or a profile file."""
    try:
        registries = runtime.registries()
        provider = runtime.provider()
        synthesis = SynthesisConfig(max_retries=runtime.config.max_retries)

        source_path = Path(source)
        if source_path.exists():
            profile = parse_profile(source_path.read_text(encoding="utf-8"))
        else:
            profile = generate_profile(source, provider, synthesis)
        if not profile.skills:
            # Generated skills persist into the registry's skills directory.
            profile, _ = enrich_profile(profile, registries.skills, provider, synthesis)

        report = validate_profile(profile, registries.view())
        if not report.ok:
            click.echo(report.render(), err=True)
            sys.exit(EXIT_VALIDATION)

        agent_id = registries.profiles.add(profile)
        plan = construct(profile, registries, runtime.construction())
        if dry_run:
            runtime.emit(
                {
                    "id": agent_id,
                    "plan_digest": plan.digest(),
                    "nodes": sorted(plan.nodes),
                    "depth": plan.depth(),
                },
                f"{agent_id}\nplan {plan.digest()}\nnodes {len(plan.nodes)} depth {plan.depth()}",
            )
            return

        target = (
            Path(out)
            if out
            else Path(runtime.config.run_root) / "workspaces" / agent_id / plan.digest()[:12]
        )
        if (target / "manifest.json").exists():
            manifest = load_manifest(target)
            if manifest.get("plan_digest") == plan.digest():
                runtime.emit(
                    {"id": agent_id, "workspace": str(target), "plan_digest": plan.digest()},
                    f"{agent_id}\nworkspace {target} (already materialized)\nplan {plan.digest()}",
                )
                return
        workspace = materialize(plan, target, runtime.construction().template_dir)
        runtime.emit(
            {"id": agent_id, "workspace": str(workspace.root_path), "plan_digest": plan.digest()},
            f"{agent_id}\nworkspace {workspace.root_path}\nplan {plan.digest()}",
        )
    except AgentMillError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(_exit_code_for(exc))


@main.command("validate")
@click.argument("profile_path", type=click.Path(exists=True))
@click.pass_obj
def cmd_validate(runtime: Runtime, profile_path: str) -> None:
    """Validate a profile document against the registries."""
    try:
        profile = parse_profile(Path(profile_path).read_text(encoding="utf-8"))
    except ProfileError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_VALIDATION)
    report = validate_profile(profile, runtime.registries().view())
    runtime.emit(
        {
            "ok": report.ok,
            "errors": [f.render() for f in report.errors],
            "warnings": [f.render() for f in report.warnings],
        },
        report.render(),
    )
    if not report.ok:
        sys.exit(EXIT_VALIDATION)


@main.command("serve")
@click.option("--host", default=None, help="Listen address override.")
@click.option("--port", default=None, type=int, help="Listen port override.")
@click.option("--ui", "ui_dir", type=click.Path(), default=None, help="Static UI directory.")
@click.pass_obj
def cmd_serve(runtime: Runtime, host: str | None, port: int | None, ui_dir: str | None) -> None:
    """Run the gateway service."""
    import uvicorn

    from agentmill.gateway import create_app

    config = runtime.config
    if host:
        config = dataclasses.replace(config, host=host)
    if port:
        config = dataclasses.replace(config, port=port)
    if ui_dir:
        config = dataclasses.replace(config, ui_dir=Path(ui_dir).resolve())
    if runtime.mock:
        config = dataclasses.replace(config, provider={"kind": "mock"})
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")


def _table(rows: list[dict], columns: list[str]) -> str:
    if not rows:
        return "(empty)"
    widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in rows)) for c in columns}
    header = "  ".join(c.ljust(widths[c]) for c in columns)
    rule = "  ".join("-" * widths[c] for c in columns)
    lines = [header, rule]
    lines += ["  ".join(str(r.get(c, "")).ljust(widths[c]) for c in columns) for r in rows]
    return "\n".join(lines)


@main.command("list")
@click.argument("kind", type=click.Choice(["agents", "skills", "tools"]))
@click.pass_obj
def cmd_list(runtime: Runtime, kind: str) -> None:
    """List registered agents, skills, or tools."""
    registries = runtime.registries()
    if kind == "agents":
        rows = [
            {
                "id": id,
                "name": registries.profiles.get(id).name,
                "description": registries.profiles.get(id).description,
            }
            for id in registries.profiles.ids()
        ]
        runtime.emit({"agents": rows}, _table(rows, ["id", "description"]))
    elif kind == "skills":
        rows = [
            {"id": m.id, "name": m.name, "subject": m.subject, "level": m.level}
            for m in registries.skills.modules()
        ]
        runtime.emit({"skills": rows}, _table(rows, ["id", "subject", "level"]))
    else:
        rows = [registries.tools.get(id).as_dict() for id in registries.tools.ids()]
        runtime.emit({"tools": rows}, _table(rows, ["id", "kind", "description"]))


@main.group("skill")
def cmd_skill() -> None:
    """Skill library operations."""


@cmd_skill.command("add")
@click.argument("skill_path", type=click.Path(exists=True))
@click.option("--id", "skill_id", default=None, help="Skill identifier (defaults from path).")
@click.pass_obj
def cmd_skill_add(runtime: Runtime, skill_path: str, skill_id: str | None) -> None:
    path = Path(skill_path)
    if skill_id is None:
        stem = path.parent.name if path.name.upper() == "SKILL.MD" else path.stem
        skill_id = normalize_identifier(stem)
    try:
        module = parse_skill(path.read_text(encoding="utf-8"), skill_id)
        root = runtime.registry_root / "skills"
        root.mkdir(parents=True, exist_ok=True)
        library = SkillLibrary.open(root)
        library.add(module)
    except AgentMillError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(_exit_code_for(exc))
    runtime.emit(
        {"id": module.id, "revision": library.revision},
        f"added {module.id} (library revision {library.revision})",
    )


@cmd_skill.command("show")
@click.argument("skill_id")
@click.pass_obj
def cmd_skill_show(runtime: Runtime, skill_id: str) -> None:
    try:
        module = SkillLibrary.open(runtime.registry_root / "skills").resolve(skill_id)
    except AgentMillError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(_exit_code_for(exc))
    if runtime.format == "json":
        payload = {
            "id": module.id,
            "name": module.name,
            "subject": module.subject,
            "level": module.level,
        }
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        click.echo(render_skill(module))


@cmd_skill.command("stats")
@click.pass_obj
def cmd_skill_stats(runtime: Runtime) -> None:
    stats = SkillLibrary.open(runtime.registry_root / "skills").stats()
    levels = [level for level in LEVELS if level != "unspecified"]
    rows = []
    for subject in SUBJECTS:
        cells = {level: stats.counts.get((subject, level), 0) for level in LEVELS}
        if any(cells.values()):
            rows.append({"subject": subject, **cells})
    totals = {level: stats.level_total(level) for level in LEVELS}
    table_rows = [
        {"subject": r["subject"], **{lvl: r[lvl] for lvl in levels}} for r in rows
    ]
    table_rows.append({"subject": "TOTAL", **{lvl: totals[lvl] for lvl in levels}})
    runtime.emit(stats.as_dict(), _table(table_rows, ["subject", *levels]))


@main.command("metrics")
@click.argument("profile_path", type=click.Path(exists=True))
@click.pass_obj
def cmd_metrics(runtime: Runtime, profile_path: str) -> None:
    """Measure a profile's structural richness and quality bands."""
    try:
        profile = parse_profile(Path(profile_path).read_text(encoding="utf-8"))
        doc = parse_details(profile.details)
    except ProfileError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_VALIDATION)

    plan_depth = None
    try:
        plan = construct(profile, runtime.registries(), runtime.construction())
        plan_depth = plan.depth()
    except AgentMillError:
        pass

    m = measure(profile, doc, plan_depth=plan_depth)
    bands = classify(m)
    score = aggregate_score(m)
    rows = [{"metric": k, "value": v} for k, v in m.as_dict().items()]
    rows += [{"metric": f"band:{k}", "value": v} for k, v in bands.as_dict().items()]
    rows.append({"metric": "score", "value": f"{score:.4f}"})
    runtime.emit(
        {"metrics": m.as_dict(), "bands": bands.as_dict(), "score": score},
        _table(rows, ["metric", "value"]),
    )


if __name__ == "__main__":
    main()
