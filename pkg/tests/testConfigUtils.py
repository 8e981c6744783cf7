import json
import os

import pytest

from configUtils import (
    addConfigByName,
    deleteConfigByName,
    getAppConfigJson,
    getConfigJson,
    getConfigFilePath,
    getConfigList,
    getConfigs,
    getCurrentConfigIndex,
    getCurrentConfigName,
    loadSearchConfig,
    parseConfigValue,
    setConfigValue,
    setCurrentConfig,
    updateConfigFile
)
from errors import InputError
from resources import Mode

DEFAULT_CONFIG = {"dimension": 2, "classSizes": [2, 2], "outputFilePath": "out/report.json"}

def writeJson(path, data) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as file:
        json.dump(data, file)

def readJson(path):
    with open(path, "r", encoding="utf-8") as file:
        return json.load(file)

@pytest.fixture
def workspace(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    writeJson("appConfig.json", {
        "configs": [{"name": "default", "file": "default.json"}, {"name": "other", "file": "other.json"}],
        "currentConfigIndex": 0
    })
    writeJson("searchConfigs/default.json", DEFAULT_CONFIG)
    writeJson("searchConfigs/other.json", {"dimension": 3, "classSizes": [2, 2, 2, 2], "mode": "search"})
    return tmp_path

class TestAppConfig:
    def testConfigList(self, workspace) -> None:
        assert getConfigList() == ["default", "other"]
        assert getCurrentConfigName() == "default"

    def testMissingAppConfigIsRecreated(self, workspace) -> None:
        os.remove("appConfig.json")
        assert getAppConfigJson()["configs"] == [{"name": "default", "file": "default.json"}]
        assert os.path.exists("appConfig.json")

    def testInvalidIndexIsReset(self, workspace) -> None:
        writeJson("appConfig.json", {"configs": [{"name": "default", "file": "default.json"}], "currentConfigIndex": "x"})
        assert getCurrentConfigIndex() == 0

    def testOutOfRangeIndexFallsBackToDefault(self, workspace) -> None:
        writeJson("appConfig.json", {"configs": [{"name": "default", "file": "default.json"}], "currentConfigIndex": 4})
        assert getCurrentConfigName() == "default"

    def testSetCurrentConfig(self, workspace) -> None:
        assert setCurrentConfig("other")
        assert getCurrentConfigName() == "other"
        assert not setCurrentConfig("missing")
        assert getCurrentConfigName() == "other"

class TestConfigFiles:
    def testAddCopiesTheDefaultConfig(self, workspace) -> None:
        addConfigByName("fresh")
        assert getCurrentConfigName() == "fresh"
        assert readJson("searchConfigs/fresh.json") == DEFAULT_CONFIG

    def testDefaultCannotBeDeleted(self, workspace) -> None:
        deleteConfigByName("default")
        assert "default" in getConfigList()

    def testCascadeDeleteRemovesOutputs(self, workspace) -> None:
        writeJson("searchConfigs/other.json", {"outputFilePath": "reports/other.json"})
        writeJson("reports/other.json", {})
        setCurrentConfig("other")
        deleteConfigByName("other", cascade=True)
        assert not os.path.exists("reports/other.json")
        assert not os.path.exists("searchConfigs/other.json")
        assert getConfigList() == ["default"]
        assert getCurrentConfigName() == "default"

    def testDeleteKeepsTheCurrentConfig(self, workspace) -> None:
        addConfigByName("third")
        deleteConfigByName("other")
        assert getCurrentConfigName() == "third"

    def testUpdatingDefaultWritesANewConfig(self, workspace) -> None:
        written = updateConfigFile("default", {"seed": 5})
        assert written == "new_config_1"
        assert readJson("searchConfigs/new_config_1.json")["seed"] == 5
        assert readJson("searchConfigs/default.json") == DEFAULT_CONFIG

    def testSetConfigValue(self, workspace) -> None:
        assert setConfigValue("other", "classSizes", "[3, 3, 3, 3]") == "other"
        assert readJson("searchConfigs/other.json")["classSizes"] == [3, 3, 3, 3]
        with pytest.raises(InputError):
            setConfigValue("other", "colour", "red")

    def testMissingConfigFileIsRecreated(self, workspace) -> None:
        assert getConfigJson("searchConfigs/gone.json") == {}
        assert readJson("searchConfigs/gone.json") == DEFAULT_CONFIG

    @pytest.mark.parametrize("raw, value", [("3", 3), ("[2, 2]", [2, 2]), ("null", None), ("uniform:3", "uniform:3")])
    def testParseConfigValue(self, raw, value) -> None:
        assert parseConfigValue(raw) == value

class TestLoadSearchConfig:
    def testFileValuesOverDefaults(self, workspace) -> None:
        config = loadSearchConfig("searchConfigs/other.json")
        assert config.dimension == 3
        assert config.classSizes == [2, 2, 2, 2]
        assert config.mode == Mode.SEARCH
        assert config.bound == 10

    def testOverridesWinAndNoneIsIgnored(self, workspace) -> None:
        config = loadSearchConfig("searchConfigs/other.json", {"dimension": 2, "seed": None, "mode": "certify"})
        assert config.dimension == 2
        assert config.seed == 0
        assert config.mode == Mode.CERTIFY

    def testUnknownKeysAreSkipped(self, workspace) -> None:
        writeJson("searchConfigs/other.json", {"colour": "red", "seed": 4})
        assert loadSearchConfig("searchConfigs/other.json").seed == 4

    @pytest.mark.parametrize("values", [
        {"mode": "paint"},
        {"dimension": 0},
        {"matroid": "graphic"},
        {"workers": 0},
        {"lpBudget": 0},
        {"tolerance": -1.0},
        {"count": -2}
    ])
    def testInvalidValues(self, workspace, values) -> None:
        with pytest.raises(InputError):
            loadSearchConfig("searchConfigs/other.json", values)

    def testBrokenJson(self, workspace) -> None:
        with open("searchConfigs/other.json", "w", encoding="utf-8") as file:
            file.write("{")
        with pytest.raises(InputError):
            loadSearchConfig("searchConfigs/other.json")

class TestRegistryHealing:
    def testEntryWithoutAFileUsesItsName(self, workspace) -> None:
        writeJson("appConfig.json", {"configs": [{"name": "default", "file": "default.json"}, {"name": "loose"}], "currentConfigIndex": 0})
        assert getConfigFilePath("loose") == os.path.join("searchConfigs", "loose.json")
        assert getConfigList() == ["default"]

    def testEmptyRegistryRestoresTheDefaultEntry(self, workspace) -> None:
        writeJson("appConfig.json", {"configs": [], "currentConfigIndex": 0})
        assert getConfigs() == [{"name": "default", "file": "default.json"}]
        assert readJson("appConfig.json")["configs"] == [{"name": "default", "file": "default.json"}]
