"""Runs the CLI and validates every JSON output against schemas/."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def main() -> int:
    cli, schema_dir, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    work.mkdir(parents=True, exist_ok=True)
    golden = pathlib.Path(__file__).parent / "golden"
    schemas = {p.name.split(".")[0]: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}

    def run(*args: str, expect: int = 0) -> str:
        proc = subprocess.run([cli, *args], capture_output=True, text=True, check=False)
        if proc.returncode != expect:
            raise SystemExit(f"{args}: exit {proc.returncode}, expected {expect}\n{proc.stderr}")
        return proc.stdout

    def check(kind: str, doc: object) -> None:
        jsonschema.validate(doc, schemas[kind])

    instances = {
        "dwp": "DWP 2 3\n1 10\n2 4\n6\n4\n4\n",
        "p43": run("gen", "--family", "paper-4.3", "--eps", "0.1"),
        "usp": run("gen", "--family", "uniform-usp", "--n", "40", "--m", "6", "--seed", "3"),
    }
    for name, text in instances.items():
        (work / f"{name}.txt").write_text(text)

    checked = 0
    for name, algo in [("dwp", "dwp-lpt"), ("dwp", "opt"), ("p43", "lpt-restricted"), ("usp", "lpt-naive"),
                       ("usp", "lpt-fast")]:
        for numeric in ("rational", "f64"):
            out = json.loads(run("schedule", "--algo", algo, "--input", str(work / f"{name}.txt"),
                                 "--numeric", numeric, "--trace"))
            check("schedule", out)
            if "trace" in out:
                check("trace", out["trace"])
            checked += 1

    summary = json.loads(run("verify", "--family", "uniform-dwp", "--count", "50", "--jsonl",
                             str(work / "ratios.jsonl")))
    check("sweep", summary)
    for line in (work / "ratios.jsonl").read_text().splitlines():
        check("ratio", json.loads(line))
        checked += 1
    failing = json.loads(run("verify", "--family", "paper-4.3", "--count", "1", "--bound", "1.9",
                             "--witness", str(work / "witness.txt"), expect=1))
    check("sweep", failing)

    run("bench", "--algo", "dwp-lpt", "--sizes", "200:10,400:20", "--reps", "2", "--out", str(work / "bench.json"))
    check("bench", json.loads((work / "bench.json").read_text()))

    check("envelope", json.loads((golden / "four_lines_breakpoints.json").read_text()))
    print(f"validated {checked + 4} documents")
    return 0


if __name__ == "__main__":
    sys.exit(main())
