import json
import sys

import pytest
from click.testing import CliRunner

from certificates import strongSeparation
from generators import tightnessFixture
from geometricJoinApp import cli, runCli
from models import QPoint
from readWrite import writeJsonFile
from reportModels import SearchConfig, SeparationCertificate
from tests.testCertificates import separableInstance

@pytest.fixture
def runner(tmp_path, monkeypatch) -> CliRunner:
    monkeypatch.chdir(tmp_path)
    return CliRunner()

def readJson(path):
    with open(path, "r", encoding="utf-8") as file:
        return json.load(file)

class TestRunVerbs:
    def testGenerateThenAnalyze(self, runner) -> None:
        result = runner.invoke(cli, ["gen", "--count", "1", "--seed", "3", "--out", "inst.json"])
        assert result.exit_code == 0
        assert readJson("inst.json")["dimension"] == SearchConfig().dimension

        result = runner.invoke(cli, ["analyze", "--instance", "inst.json", "--out", "report.json"])
        assert result.exit_code == 0
        assert readJson("report.json")["incomplete"] is False

    def testGenerateSeveralInstances(self, runner) -> None:
        result = runner.invoke(cli, ["gen", "--count", "2", "--index", "4", "--out", "inst.json"])
        assert result.exit_code == 0
        assert readJson("inst_4.json") != readJson("inst_5.json")

    def testExceededBudgetExitsWithTwo(self, runner) -> None:
        writeJsonFile("tightness.json", tightnessFixture(1).toJsonableDict())
        result = runner.invoke(cli, [
            "analyze", "--instance", "tightness.json", "--budget-lp", "1", "--out", "partial.json"
        ])
        assert result.exit_code == 2
        assert readJson("partial.json")["incomplete"] is True

    def testInvalidDimensionExitsWithOne(self, runner) -> None:
        result = runner.invoke(cli, ["analyze", "--dim", "0", "--out", "report.json"])
        assert result.exit_code == 1

    def testUnknownMatroidExitsWithOne(self, runner) -> None:
        result = runner.invoke(cli, ["gen", "--matroid", "graphic", "--out", "inst.json"])
        assert result.exit_code == 1

    def testCertifyThenVerify(self, runner) -> None:
        writeJsonFile("sep.json", separableInstance().toJsonableDict())
        result = runner.invoke(cli, ["certify", "--instance", "sep.json", "--certificate", "certs.json"])
        assert result.exit_code == 0
        assert readJson("certs.json")["certificates"]

        result = runner.invoke(cli, ["verify", "--instance", "sep.json", "--certificate", "certs.json"])
        assert result.exit_code == 0

    def testFailingCertificateExitsWithThree(self, runner) -> None:
        instance = separableInstance()
        writeJsonFile("sep.json", instance.toJsonableDict())
        certificate = strongSeparation(instance)
        moved = SeparationCertificate(certificate.classIndices, certificate.hyperplane, QPoint([5, 0]))
        writeJsonFile("bad.json", {"kind": "separation", "payload": moved.toJsonableDict()})

        result = runner.invoke(cli, ["verify", "--instance", "sep.json", "--certificate", "bad.json"])
        assert result.exit_code == 3

    def testMissingFindingsFileExitsWithOne(self, runner) -> None:
        result = runner.invoke(cli, ["verify", "--findings", "nowhere.jsonl"])
        assert result.exit_code == 1

class TestConfigCommands:
    def testSetAndView(self, runner) -> None:
        result = runner.invoke(cli, ["config", "set", "seed", "7"])
        assert result.exit_code == 0
        assert "new_config_1: seed = 7" in result.output
        assert runner.invoke(cli, ["config", "view"]).output.strip() == "new_config_1"
        assert readJson("searchConfigs/new_config_1.json")["seed"] == 7

    def testUnknownKeyExitsWithOne(self, runner) -> None:
        assert runner.invoke(cli, ["config", "set", "nonsense", "1"]).exit_code == 1

    def testSetCurrentToAMissingConfig(self, runner) -> None:
        assert runner.invoke(cli, ["config", "set-current", "missing"]).exit_code == 1

    def testAddListAndDelete(self, runner) -> None:
        runner.invoke(cli, ["config", "add", "planar"])
        assert "- planar" in runner.invoke(cli, ["config", "list"]).output
        runner.invoke(cli, ["config", "delete", "planar"])
        assert "- planar" not in runner.invoke(cli, ["config", "list"]).output

    def testShowResolvedValues(self, runner) -> None:
        writeJsonFile("appConfig.json", {"configs": [{"name": "default", "file": "default.json"}], "currentConfigIndex": 0})
        writeJsonFile("searchConfigs/default.json", {"seed": 2})
        result = runner.invoke(cli, ["config", "show"])
        assert result.exit_code == 0
        assert json.loads(result.output)["bound"] == SearchConfig().bound

class TestRunCli:
    def testUsageErrorExitsWithOne(self, runner, monkeypatch) -> None:
        monkeypatch.setattr(sys, "argv", ["geometricJoinApp", "analyze", "--dim", "two"])
        with pytest.raises(SystemExit) as exitInfo:
            runCli()
        assert exitInfo.value.code == 1
