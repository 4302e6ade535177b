"""Regenerate tests/golden/ from scenarios/. Review the diff before committing."""

from pathlib import Path

from firepath.render import render_ascii, render_svg
from firepath.scenario import emit_run, parse_scenario
from firepath.simulation import run_scenario

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "golden"


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for path in sorted((ROOT / "scenarios").glob("*.yaml")):
        rec = run_scenario(parse_scenario(path.read_bytes()))
        (GOLDEN / f"{path.stem}.run.json").write_bytes(emit_run(rec))
        (GOLDEN / f"{path.stem}.txt").write_text(render_ascii(rec))
        (GOLDEN / f"{path.stem}.svg").write_text(render_svg(rec))
        print(f"{path.stem}: {rec.metrics['outcome']}")


if __name__ == "__main__":
    main()
