import json
import os
import tempfile
import unittest
from pathlib import Path

from src.errors import SystemFileError
from src.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from src.reproduce import CheckResult, RunReport
from src.utils.file_handling import DATA_DIR, FileHandler


class TestFileHandler(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, text):
        path = self.dir / name
        path.write_text(text, encoding='utf-8')
        return path

    def test_bundled_families(self):
        self.assertEqual(len(FileHandler.load_system("riccati.sys").system.params), 8)
        self.assertEqual(len(FileHandler.load_system("riccati-a03-zero.sys").system.params), 7)

    def test_bindings_leave_the_parameter_list(self):
        path = self.write("bound.sys", "[vars]\nx y\n[params]\nb20\n[eqs]\ndx = -y\ndy = x + b20*x^2\n"
                                       "[bind]\nb20 = 1/2\n")
        loaded = FileHandler.load_system(path)
        self.assertEqual(loaded.system.params, ())
        self.assertEqual(loaded.numeric_values(), {'b20': 0.5})
        self.assertEqual(loaded.unbound.params, ('b20',))

    def test_missing_file(self):
        with self.assertRaises(SystemFileError):
            FileHandler.load_system(self.dir / "absent.sys")

    def test_bad_equation_reports_line(self):
        path = self.write("bad.sys", "# broken\n[vars]\nx y\n[eqs]\ndx = -y +\ndy = x\n")
        with self.assertRaises(SystemFileError) as cm:
            FileHandler.load_system(path)
        self.assertEqual(cm.exception.line, 5)

    def test_unknown_section(self):
        path = self.write("odd.sys", "[vars]\nx y\n[extra]\n")
        with self.assertRaises(SystemFileError) as cm:
            FileHandler.load_system(path)
        self.assertEqual(cm.exception.line, 3)

    def test_seeds(self):
        seeds = FileHandler.load_seeds(DATA_DIR / "seeds.json")
        self.assertTrue(seeds)
        self.assertTrue(all(isinstance(x, float) and isinstance(y, float) for x, y in seeds))
        with self.assertRaises(SystemFileError):
            FileHandler.load_seeds(self.write("seeds.json", '{"seeds": [[1, 2, 3]]}'))

    def test_write_output_skips_unchanged_content(self):
        target = self.dir / "nested" / "out.txt"
        self.assertTrue(FileHandler.should_update_file(target, "a"))
        self.assertTrue(FileHandler.write_output(target, "a"))
        self.assertFalse(FileHandler.should_update_file(target, "a"))
        self.assertFalse(FileHandler.write_output(target, "a"))
        self.assertTrue(FileHandler.write_output(target, "b"))
        self.assertEqual(target.read_text(encoding='utf-8'), "b")


class TestReports(unittest.TestCase):
    def test_timing_only_on_request(self):
        check = CheckResult("chart", "published", {"du": "u"}, True, seconds=1.23456)
        self.assertNotIn("seconds", check.to_dict())
        self.assertEqual(check.to_dict(timing=True)["seconds"], 1.235)
        report = RunReport("reproduce", "abc", [check])
        self.assertTrue(report.passed)
        self.assertEqual(report.to_dict()["checks"][0]["provenance"], "published")

    def test_empty_report_fails(self):
        self.assertFalse(RunReport("reproduce", "abc").passed)


class TestCommandLine(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.out = self.dir / "report.json"

    def tearDown(self):
        self.tmp.cleanup()

    def report(self):
        with self.out.open('r', encoding='utf-8') as f:
            return json.load(f)

    def test_usage_errors(self):
        self.assertEqual(main(["--bogus"]), EXIT_USAGE)
        self.assertEqual(main([]), EXIT_USAGE)
        self.assertEqual(main(["linquant", "--system", str(self.dir / "absent.sys")]), EXIT_USAGE)

    def test_linquant(self):
        code = main(["--out", str(self.out), "linquant", "--system", "riccati.sys", "--max-order", "1"])
        self.assertEqual(code, EXIT_OK)
        report = self.report()
        self.assertEqual(report["system"], "riccati")
        self.assertEqual(len(report["quantities"]), 1)
        self.assertEqual(report["quantities"][0]["k"], 1)

    def test_series_cap(self):
        code = main(["--series-cap", "2", "linquant", "--system", "riccati.sys", "--max-order", "3"])
        self.assertEqual(code, EXIT_USAGE)

    def test_compactify(self):
        code = main(["--out", str(self.out), "compactify", "--system", "sys2-2without", "--chart", "u2",
                     "--singulars"])
        self.assertEqual(code, EXIT_OK)
        report = self.report()
        self.assertEqual(report["chart"], "U2")
        self.assertEqual(report["degree"], 3)
        self.assertEqual(report["singulars"]["U1"], "none")
        self.assertEqual(len(report["singulars"]["U2"]), 1)

    def test_verify_darboux(self):
        code = main(["--out", str(self.out), "verify-darboux", "--system", "sys2-1",
                     "--cert", "certificate-2.json"])
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(self.report()["passed"])

    def test_tampered_certificate_fails(self):
        with (DATA_DIR / "certificate-2.json").open('r', encoding='utf-8') as f:
            data = json.load(f)
        data["z"][2][1] = 1
        cert = self.dir / "tampered.json"
        cert.write_text(json.dumps(data), encoding='utf-8')
        code = main(["--out", str(self.out), "verify-darboux", "--system", "sys2-1", "--cert", str(cert)])
        self.assertEqual(code, EXIT_FAILED)
        self.assertFalse(self.report()["passed"])

    def test_bifurcate_kukles_variety(self):
        code = main(["--out", str(self.out), "bifurcate", "--variety", "I4"])
        self.assertEqual(code, EXIT_OK)
        report = self.report()
        self.assertTrue(report["passed"])
        self.assertEqual(report["order"], 3)
        self.assertEqual(len(report["spot_checks"]), 1)

    def test_groebner_basis(self):
        ideal = self.dir / "ideal.json"
        ideal.write_text(json.dumps({"vars": ["x", "y"], "polys": ["x^2 + y^2 - 1", "x - y"]}),
                         encoding='utf-8')
        code = main(["--out", str(self.out), "gb", "--ideal", str(ideal), "--order", "lex",
                     "--radical", "2*y^2 - 1"])
        self.assertEqual(code, EXIT_OK)
        report = self.report()
        self.assertEqual(report["field"], "Q")
        self.assertFalse(report["unit"])
        self.assertEqual(len(report["basis"]), 2)
        self.assertTrue(report["radical_member"])

    def test_portrait(self):
        seeds = self.dir / "seeds.json"
        seeds.write_text(json.dumps({"seeds": [[0.5, 0.0], [1e6, 0.0]]}), encoding='utf-8')
        svg, csv_path = self.dir / "linear.svg", self.dir / "linear.csv"
        code = main(["--out", str(self.out), "portrait", "--system", "linear", "--seeds", str(seeds),
                     "--out", str(svg), "--csv", str(csv_path)])
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(os.path.exists(svg))
        self.assertIn('id="seed-0"', svg.read_text(encoding='utf-8'))
        self.assertTrue(csv_path.read_text(encoding='utf-8').startswith("seed_index,t,x,y,X_disc,Y_disc\n"))
        self.assertEqual(self.report()["seeds"], 2)


if __name__ == '__main__':
    unittest.main()
