"""End-to-end checks of the sdflab command line: schemas, exit codes, cache and seeds."""
import json
import os
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema
import referencing

SDFLAB = sys.argv.pop(1)
SCHEMAS = pathlib.Path(sys.argv.pop(1))


def load_registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], referencing.Resource.from_contents(doc)))
    return referencing.Registry().with_resources(resources)


REGISTRY = load_registry()


def validate(doc, schema_name):
    schema = json.loads((SCHEMAS / schema_name).read_text())
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(doc)


def run(*args, env=None):
    full_env = {k: v for k, v in os.environ.items() if k != "SDFLAB_CACHE_DIR"}
    full_env.update(env or {})
    return subprocess.run([SDFLAB, *args], capture_output=True, text=True, env=full_env, timeout=300)


def strip_elapsed(text):
    doc = json.loads(text)
    doc.pop("elapsed_ms")
    return doc


class Sets(unittest.TestCase):
    def test_greedy(self):
        r = run("sets", "greedy", "--limit", "20")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        validate(doc, "sets_greedy.schema.json")
        self.assertEqual(doc["elements"], [0, 2, 5, 7, 10, 12, 15, 17, 20])

    def test_exact(self):
        r = run("sets", "exact", "--x", "30")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        validate(doc, "sets_exact.schema.json")
        self.assertEqual(doc["size"], 10)
        self.assertEqual(doc["table"][:9], [0, 1, 1, 2, 2, 2, 3, 3, 4])

    def test_check_exit_codes(self):
        with tempfile.TemporaryDirectory() as d:
            good = pathlib.Path(d, "good.txt")
            good.write_text("1\n3\n6\n")
            bad = pathlib.Path(d, "bad.txt")
            bad.write_text("1\n5\n")
            r = run("sets", "check", "--file", str(good))
            self.assertEqual(r.returncode, 0, r.stderr)
            validate(json.loads(r.stdout), "sets_check.schema.json")
            r = run("sets", "check", "--file", str(bad))
            self.assertEqual(r.returncode, 1)
            doc = json.loads(r.stdout)
            validate(doc, "sets_check.schema.json")
            self.assertEqual(doc["witness"], {"larger": 5, "smaller": 1, "root": 2})
            r = run("sets", "check", "--file", str(pathlib.Path(d, "missing.txt")))
            self.assertEqual(r.returncode, 2)
            self.assertTrue(r.stderr)


class Errors(unittest.TestCase):
    def test_usage(self):
        self.assertEqual(run("sets", "greedy").returncode, 2)
        self.assertEqual(run("sets", "greedy", "--limit", "x").returncode, 2)
        self.assertEqual(run("nonsense").returncode, 2)

    def test_library_error(self):
        r = run("lowerbound", "build", "--x", "1000000", "--alpha", "0.3", "--strict")
        self.assertEqual(r.returncode, 3)
        doc = json.loads(r.stdout)
        validate(doc, "error.schema.json")
        self.assertEqual(doc["error"], "Infeasible")
        self.assertTrue(r.stderr.startswith("error: "))

    def test_not_sdf(self):
        with tempfile.TemporaryDirectory() as d:
            path = pathlib.Path(d, "a.txt")
            path.write_text("1\n2\n")
            r = run("increment", "run", "--set", str(path), "--x", "50")
            self.assertEqual(r.returncode, 3)
            self.assertEqual(json.loads(r.stdout)["error"], "NotSquareDifferenceFree")


class Results(unittest.TestCase):
    def test_dichotomy(self):
        r = run("fourier", "dichotomy", "--x", "120", "--alpha", "0.2", "--d", "1", "--moduli", "3,5,7",
                "--relaxed", "--seed", "3")
        self.assertIn(r.returncode, (0, 1), r.stderr)
        validate(json.loads(r.stdout), "fourier_dichotomy.schema.json")

    def test_weyl(self):
        r = run("circle", "weyl", "--theta", "0.2000000001", "--x", "1000", "--delta", "0.11")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        validate(doc, "circle_weyl.schema.json")
        self.assertEqual(doc["q"], 5)

    def test_increment(self):
        with tempfile.TemporaryDirectory() as d:
            path = pathlib.Path(d, "g.txt")
            greedy = json.loads(run("sets", "greedy", "--limit", "1000", "--start", "1").stdout)["elements"]
            path.write_text("\n".join(map(str, greedy)) + "\n")
            r = run("increment", "run", "--set", str(path), "--x", "1000")
            self.assertIn(r.returncode, (0, 1), r.stderr)
            validate(json.loads(r.stdout), "increment_run.schema.json")

    def test_lower_bound(self):
        r = run("lowerbound", "build", "--x", "100000", "--alpha", "0.3", "--T", "60")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        validate(doc, "lowerbound_build.schema.json")
        n = 1
        for p in doc["primes"]:
            self.assertEqual(p % 4, 1)
            n *= p
        self.assertEqual(doc["n"], n)
        r = run("lowerbound", "verify", "--x", "100000", "--alpha", "0.3", "--T", "60")
        self.assertIn(r.returncode, (0, 1), r.stderr)
        validate(json.loads(r.stdout), "lowerbound_verify.schema.json")

    def test_csv(self):
        r = run("circle", "spectrum", "--x", "100", "--theta-grid", "4")
        self.assertEqual(r.returncode, 0, r.stderr)
        lines = r.stdout.strip().split("\n")
        self.assertEqual(lines[0].split(",")[:3], ["theta", "re", "im"])
        self.assertEqual(len(lines), 5)


class Cache(unittest.TestCase):
    ARGS = ("fourier", "energy", "--x", "200", "--alpha", "0.2", "--d", "1", "--moduli", "3,5,7")

    def test_hit_miss_and_eviction(self):
        with tempfile.TemporaryDirectory() as d:
            first = run(*self.ARGS, "--cache-dir", d, "--verbose")
            self.assertEqual(first.returncode, 0, first.stderr)
            self.assertNotIn("cache hit", first.stderr)
            second = run(*self.ARGS, "--cache-dir", d, "--verbose")
            self.assertIn("cache hit", second.stderr)
            self.assertEqual(first.stdout, second.stdout)

            via_env = run(*self.ARGS, "--verbose", env={"SDFLAB_CACHE_DIR": d})
            self.assertIn("cache hit", via_env.stderr)
            self.assertEqual(first.stdout, via_env.stdout)

            bypass = run(*self.ARGS, "--cache-dir", d, "--no-cache", "--verbose")
            self.assertNotIn("cache hit", bypass.stderr)

            changed = run(*self.ARGS[:-1], "3,5,7,11", "--cache-dir", d, "--verbose")
            self.assertNotIn("cache hit", changed.stderr)
            self.assertNotEqual(json.loads(changed.stdout)["manifest"]["hash"],
                                json.loads(first.stdout)["manifest"]["hash"])

            store = pathlib.Path(d, "cache.jsonl")
            lines = store.read_text().splitlines()
            self.assertEqual(len(lines), 2)
            entry = json.loads(lines[0])
            entry["output"] = entry["output"].replace("energy", "ENERGY")
            lines[0] = json.dumps(entry)
            store.write_text("\n".join(lines) + "\n")
            evicted = run(*self.ARGS, "--cache-dir", d, "--verbose")
            self.assertIn("warning", evicted.stderr)
            self.assertNotIn("cache hit", evicted.stderr)
            self.assertEqual(strip_elapsed(evicted.stdout), strip_elapsed(first.stdout))
            again = run(*self.ARGS, "--cache-dir", d, "--verbose")
            self.assertIn("cache hit", again.stderr)


class Determinism(unittest.TestCase):
    def test_seed(self):
        args = ("fourier", "energy", "--x", "300", "--alpha", "0.3", "--d", "1", "--moduli", "3,5,7", "--no-cache")
        a = run(*args, "--seed", "5")
        b = run(*args, "--seed", "5")
        c = run(*args, "--seed", "6")
        self.assertEqual(strip_elapsed(a.stdout), strip_elapsed(b.stdout))
        self.assertNotEqual(json.loads(a.stdout)["energy"], json.loads(c.stdout)["energy"])

    def test_dichotomy_seed(self):
        args = ("fourier", "dichotomy", "--x", "150", "--alpha", "0.25", "--d", "1", "--moduli", "3,5,7",
                "--relaxed", "--no-cache", "--seed", "9")
        a, b = run(*args), run(*args)
        self.assertEqual(strip_elapsed(a.stdout), strip_elapsed(b.stdout))


if __name__ == "__main__":
    unittest.main(verbosity=2)
