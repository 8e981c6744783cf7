import logging
import json
import os
from typing import Any, Dict, List, Optional

from errors import InputError
from generators import checkConfig, parseMatroid
from readWrite import readJsonFile, writeJsonFile
from reportModels import SearchConfig
from resources import Mode, SearchConfigDefaults, SearchConfigMapping

logger = logging.getLogger(__name__)

CONFIGS_FOLDER: str = "searchConfigs"

def validateConfigObject(config: Any) -> bool:
    """
    An appConfig.json entry needs a name and a file under searchConfigs/.
    """
    requiredKeys: List[str] = SearchConfigMapping.requiredKeys
    return all(
        config.get(key) is not None for key in requiredKeys
    )

def getConfigList() -> List[str]:
    """
    Names of the registered search configs, skipping malformed entries.
    """
    appConfigJson = getAppConfigJson()
    return [
        config.get("name")
        for config in appConfigJson.get("configs", [])
        if validateConfigObject(config)
    ]

def writeAppConfigJsonFile(appConfigJson: Any) -> None:
    writeJsonFile("appConfig.json", appConfigJson)

def defaultAppConfigJson() -> Dict[str, Any]:
    return {
        "configs": [
            {
                "name": "default",
                "file": "default.json"
            }
        ],
        "currentConfigIndex": 0
    }

def resetConfigsList() -> None:
    appConfigJson = getAppConfigJson()
    appConfigJson["configs"] = defaultAppConfigJson()["configs"]
    writeAppConfigJsonFile(appConfigJson)

def resetCurrentConfigIndex() -> None:
    appConfigJson = getAppConfigJson()
    appConfigJson["currentConfigIndex"] = 0
    writeAppConfigJsonFile(appConfigJson)

def resetAppConfigJson() -> None:
    writeAppConfigJsonFile(defaultAppConfigJson())

def getConfigs() -> List[Any]:
    """
    Registered search config entries; an empty list is reset to the default entry.
    """
    appConfigJson = getAppConfigJson()
    configs = appConfigJson.get("configs")
    if not configs:
        logger.error("No search configs registered, restoring the default entry")
        resetConfigsList()
        appConfigJson = getAppConfigJson()
        configs = appConfigJson.get("configs")

    if not configs:
        logger.critical("No search configs registered after reset")
        return defaultAppConfigJson()["configs"]

    return configs

def getCurrentConfigIndex() -> int:
    appConfigJson = getAppConfigJson()
    currentConfigIndex = appConfigJson.get("currentConfigIndex")

    if not isinstance(currentConfigIndex, int):
        logger.error("Invalid currentConfigIndex, resetting to 0")
        resetCurrentConfigIndex()
        appConfigJson = getAppConfigJson()
        currentConfigIndex = appConfigJson.get("currentConfigIndex")

    if not isinstance(currentConfigIndex, int):
        logger.critical("currentConfigIndex is not an integer after reset")
        return 0

    return currentConfigIndex

def getCurrentConfigName() -> str:
    """
    The search config that run verbs read; an index out of range falls back to default.
    """
    currentConfigIndex = getCurrentConfigIndex()
    configs = getConfigs()

    if 0 > currentConfigIndex or currentConfigIndex >= len(configs):
        logger.error("Invalid currentConfigIndex, resetting to default config")
        resetCurrentConfigIndex()
        currentConfigIndex = 0

    configName = configs[currentConfigIndex].get("name")
    if configName:
        return configName

    logger.error("Current config name is not set, resetting to default config")
    resetAppConfigJson()

    return "default"

def getAppConfigJson() -> Any:
    appConfigJsonString: Optional[str] = readJsonFile("appConfig.json")
    if not appConfigJsonString:
        logger.warning("appConfig.json not found, resetting to default")
        resetAppConfigJson()
        appConfigJsonString = readJsonFile("appConfig.json")

    if not appConfigJsonString:
        logger.critical("Failed to read appConfig.json after reset")
        return defaultAppConfigJson()

    return json.loads(appConfigJsonString)

def getConfigFilePath(configName: str) -> str:
    configs = getConfigs()

    for config in configs:
        if config.get("name") == configName:
            optionalConfigFileName: Optional[str] = config.get("file")
            if optionalConfigFileName:
                return os.path.join(CONFIGS_FOLDER, optionalConfigFileName)
            logger.error("Search config '%s' has no file name, using %s.json", configName, configName)

    return os.path.join(CONFIGS_FOLDER, f"{configName}.json")

def getCurrentConfigFilePath() -> str:
    return getConfigFilePath(getCurrentConfigName())

def setCurrentConfig(name: str) -> bool:
    """
    Select the search config later run verbs read.
    """
    appConfigJson = getAppConfigJson()
    configs = appConfigJson.get("configs", [])
    if not configs:
        logger.error("No configs available")
        return False

    for index, config in enumerate(configs):
        if config.get("name") == name:
            appConfigJson["currentConfigIndex"] = index
            writeAppConfigJsonFile(appConfigJson)
            logger.info("Current config set to: %s", name)
            return True
    logger.error("Config '%s' not found", name)
    return False

def getConfigJson(configFilePath: str) -> Any:
    """
    Raw JSON of a search config file, before defaults and overrides apply.
    A missing file is recreated from the default config.
    """
    configJsonString: Optional[str] = readJsonFile(configFilePath)
    if configJsonString is None:
        logger.error("Config file %s not found, resetting to default", configFilePath)
        resetConfigFile(configFilePath)
        return {}

    try:
        return json.loads(configJsonString)
    except json.JSONDecodeError as e:
        logger.error("Failed to parse config file %s: %s", configFilePath, e)
        return None

def createConfigMapping(configName: str, configFileName: str) -> None:
    appConfigJson = getAppConfigJson()
    configs = appConfigJson.get("configs", [])

    for config in configs:
        if config.get("name") == configName:
            logger.info("Config '%s' already exists", configName)
            return

    configs.append({
        "name": configName,
        "file": configFileName
    })
    appConfigJson["configs"] = configs
    writeAppConfigJsonFile(appConfigJson)
    logger.info("Registered search config %s", configName)

def createNewConfigName() -> str:
    existingConfigNames: List[str] = getConfigList()

    newConfigNumber: int = 1
    newConfigName: str = f"new_config_{newConfigNumber}"
    while newConfigName in existingConfigNames:
        newConfigNumber += 1
        newConfigName = f"new_config_{newConfigNumber}"

    return newConfigName

def resetConfigFile(filePath: str) -> None:
    """
    Overwrite a search config with a copy of the default one, or with an empty
    config (all defaults) when the default config itself is missing.
    """
    defaultConfigFilePath: str = getConfigFilePath("default")
    defaultConfig: Any = {}
    if os.path.normpath(filePath) != os.path.normpath(defaultConfigFilePath):
        defaultConfigString: Optional[str] = readJsonFile(defaultConfigFilePath)
        if defaultConfigString is None:
            logger.error("Default config %s missing, recreating it", defaultConfigFilePath)
            writeJsonFile(defaultConfigFilePath, {})
        else:
            try:
                defaultConfig = json.loads(defaultConfigString)
            except json.JSONDecodeError as e:
                logger.error("Failed to parse default config: %s", e)

    writeJsonFile(filePath, defaultConfig)
    logger.info("Reset config file %s to default state", filePath)

def createAndUseNewConfig(newConfigName: Optional[str] = None) -> str:
    if newConfigName is None:
        newConfigName = createNewConfigName()

    resetConfigFile(getConfigFilePath(newConfigName))
    createConfigMapping(newConfigName, f"{newConfigName}.json")
    setCurrentConfig(newConfigName)

    return newConfigName

def addConfigByName(name: str) -> None:
    """
    Register a search config copied from default and make it current.
    """
    if not name:
        logger.error("Config name cannot be empty")
        return

    createAndUseNewConfig(name)

def deleteConfigByName(name: str, cascade: bool = False) -> None:
    """
    Deletes a configuration by name. With cascade the report and findings
    files it points to are removed as well.
    """
    if not name:
        logger.error("Config name cannot be empty")
        return
    if name == "default":
        logger.error("The 'default' config cannot be deleted")
        return

    configFilePath: str = getConfigFilePath(name)

    if cascade and os.path.exists(configFilePath):
        configJson = getConfigJson(configFilePath) or {}
        for key in ("outputFilePath", "findingsFilePath"):
            path: Optional[str] = configJson.get(key)
            if path and os.path.exists(path):
                os.remove(path)
                logger.info("Removed %s", path)

    if os.path.exists(configFilePath):
        os.remove(configFilePath)

    currentName: str = getCurrentConfigName()
    configs = [config for config in getConfigs() if config.get("name") != name]
    appConfigJson: Dict[str, Any] = {"configs": configs, "currentConfigIndex": 0}
    for index, config in enumerate(configs):
        if config.get("name") == currentName:
            appConfigJson["currentConfigIndex"] = index
    writeAppConfigJsonFile(appConfigJson)
    logger.info("Deleted config: %s", name)

def updateConfigFile(configName: str, update: Any) -> str:
    """
    Merge `update` into a search config and return the name of the config
    written; default is never edited in place.
    """
    if configName == "default":
        logger.warning("Cannot update 'default' config, creating a new one")
        configName = createAndUseNewConfig()
    configFilePath: str = getConfigFilePath(configName)
    configJson = getConfigJson(configFilePath)
    if configJson is None:
        raise InputError(f"Config file {configFilePath} is not valid JSON")
    configJson.update(update)
    writeJsonFile(configFilePath, configJson)
    return configName

def knownConfigKeys() -> List[str]:
    return list(SearchConfig().toJsonableDict().keys())

def parseConfigValue(rawValue: str) -> Any:
    """
    Values from the terminal are JSON when they parse as JSON ("3", "[2,2]",
    "null", "true"), plain strings otherwise.
    """
    try:
        return json.loads(rawValue)
    except json.JSONDecodeError:
        return rawValue

def setConfigValue(configName: str, key: str, rawValue: str) -> str:
    if key not in knownConfigKeys():
        raise InputError(f"Unknown config key '{key}', expected one of {knownConfigKeys()}")
    return updateConfigFile(configName, {key: parseConfigValue(rawValue)})

def validateSearchConfig(config: SearchConfig) -> None:
    checkConfig(config)
    parseMatroid(config.matroid)
    if config.count < 0:
        raise InputError(f"count must be >= 0, got {config.count}")
    if config.index < 0:
        raise InputError(f"index must be >= 0, got {config.index}")
    if config.workers < 1:
        raise InputError(f"workers must be >= 1, got {config.workers}")
    if config.tolerance <= 0:
        raise InputError(f"tolerance must be positive, got {config.tolerance}")
    if config.dimensionCap is not None and config.dimensionCap < 0:
        raise InputError(f"dimension cap must be >= 0, got {config.dimensionCap}")
    for name, budget in (("lpBudget", config.lpBudget), ("faceBudget", config.faceBudget)):
        if budget is not None and budget < 1:
            raise InputError(f"{name} must be >= 1, got {budget}")

def loadSearchConfig(configFilePath: str, overrides: Optional[Dict[str, Any]] = None) -> SearchConfig:
    """
    Defaults, then the config file, then terminal overrides (None means not
    given). Unknown keys are skipped with a warning.
    """
    configJson = getConfigJson(configFilePath)
    if configJson is None:
        raise InputError(f"Config file {configFilePath} is not valid JSON")

    values: Dict[str, Any] = {}
    known: List[str] = knownConfigKeys()
    given: Dict[str, Any] = {key: value for key, value in (overrides or {}).items() if value is not None}
    for key, value in list(configJson.items()) + list(given.items()):
        if key not in known:
            logger.warning("Unknown config key '%s' in %s, skipping", key, configFilePath)
            continue
        values[key] = value

    mode: Any = values.get("mode", SearchConfigDefaults.mode)
    if not isinstance(mode, Mode):
        try:
            values["mode"] = Mode(mode)
        except ValueError as e:
            raise InputError(f"Unknown mode '{mode}', expected one of {Mode.getTerminalOptions()}") from e

    try:
        config: SearchConfig = SearchConfig(**values)
    except TypeError as e:
        raise InputError(f"Invalid config {configFilePath}: {e}") from e
    validateSearchConfig(config)
    logger.debug("Loaded config %s: %s", configFilePath, config.toJsonableDict())
    return config
