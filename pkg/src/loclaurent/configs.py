import os
from dataclasses import dataclass, field, asdict
from typing import Any, Dict, List, Optional, Set
import yaml

ORDER_MARGIN_ENV = "LOCLAURENT_ORDER_MARGIN"


@dataclass
class ConfigClass:
    @classmethod
    def from_dict(cls, cfg : Dict[str, Any]):
        return cls(**cfg)

    def to_dict(self):
        return asdict(self)


@dataclass
class LocalizationConfig(ConfigClass):
    """
    Config for evaluating the localization formula

    :param order_margin: Number of extra degrees computed on each side of the a priori support [-phi_max, -phi_min]
    :type order_margin: int

    :param check_integrality: Require every multiplicity of the character to be an integer
    :type check_integrality: bool

    :param fraction_oracle: In point mode, cross-check the series result against exact rational summation
    :type fraction_oracle: bool

    :param workers: Number of threads used to expand component contributions. 1 computes them in order.
    :type workers: int
    """
    order_margin: int = 16
    check_integrality: bool = True
    fraction_oracle: bool = True
    workers: int = 1


@dataclass
class VerificationConfig(ConfigClass):
    """
    Config for the verification checks and the example suite

    :param show_progress: Show a progress bar while running the example suite
    :type show_progress: bool

    :param eval_points: Rational points (as "p/q" strings) where polynomial and fraction evaluation are compared
    :type eval_points: List[str]
    """
    show_progress: bool = False
    eval_points: List[str] = field(default_factory=lambda: ["2", "-1", "3/2"])


@dataclass
class LoggingConfig(ConfigClass):
    """
    Config for logging

    :param level: Root log level
    :type level: str

    :param suppress_log_keywords: Prefixes of loggers to silence. Type as single string with different prefixes delimited by commas.
    :type suppress_log_keywords: str
    """
    level: str = "WARNING"
    suppress_log_keywords: Optional[str] = None


def merge(base: Dict, update: Dict, updated: Set) -> Dict:
    "Recursively updates a nested dictionary with new values"
    for k, v in base.items():
        if k in update and isinstance(v, dict):
            base[k] = merge(v, update[k], updated)
            updated.add(k)
        elif k in update:
            base[k] = update[k]
            updated.add(k)

    return base


@dataclass
class LocLaurentConfig(ConfigClass):
    """
    Top-level config

    :param localization: Localization config
    :type localization: LocalizationConfig

    :param verification: Verification config
    :type verification: VerificationConfig

    :param logging: Logging config
    :type logging: LoggingConfig
    """

    localization: LocalizationConfig = field(default_factory=LocalizationConfig)
    verification: VerificationConfig = field(default_factory=VerificationConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    @classmethod
    def load_yaml(cls, yml_fp: str):
        """
        Load yaml file as LocLaurentConfig. Missing sections keep their defaults.

        :param yml_fp: Path to yaml file
        :type yml_fp: str
        """
        with open(yml_fp, mode="r") as file:
            config = yaml.safe_load(file) or {}
        if not isinstance(config, dict):
            raise ValueError(f"{yml_fp} must hold a mapping of config sections")
        return cls.from_dict(config)

    def to_dict(self):
        """
        Convert LocLaurentConfig to dictionary.
        """
        data = {
            "localization": self.localization.to_dict(),
            "verification": self.verification.to_dict(),
            "logging": self.logging.to_dict(),
        }

        return data

    @classmethod
    def from_dict(cls, config: Dict):
        """
        Convert dictionary to LocLaurentConfig.
        """
        return cls(
            localization=LocalizationConfig.from_dict(config.get("localization") or {}),
            verification=VerificationConfig.from_dict(config.get("verification") or {}),
            logging=LoggingConfig.from_dict(config.get("logging") or {}),
        )

    @classmethod
    def update(cls, baseconfig: Dict, config: Dict):
        update = {}
        # unflatten a string variable name into a nested dictionary
        # key1.key2.key3: value -> {key1: {key2: {key3: value}}}
        for name, value in config.items():
            if isinstance(value, dict):
                update[name] = value
            else:
                *layers, var = name.split(".")
                if layers:
                    d = update.setdefault(layers[0], {})
                    for layer in layers[1:]:
                        d = d.setdefault(layer, {})
                    d[var] = value

        if not isinstance(baseconfig, Dict):
            baseconfig = baseconfig.to_dict()

        updates = set()
        merged = merge(baseconfig, update, updates)

        for param in update:
            if param not in updates:
                raise ValueError(f"parameter {param} is not present in the config (typo or a wrong config)")

        for section, values in update.items():
            for key in values:
                if key not in updates:
                    raise ValueError(f"parameter {section}.{key} is not present in the config (typo or a wrong config)")

        return cls.from_dict(merged)

    def with_env_overrides(self, environ: Optional[Dict[str, str]] = None):
        """
        Applies environment variable overrides. Currently only LOCLAURENT_ORDER_MARGIN.

        :param environ: Mapping to read from, defaults to os.environ
        :type environ: Dict[str, str]
        """
        environ = os.environ if environ is None else environ
        raw = environ.get(ORDER_MARGIN_ENV)
        if raw is None or raw.strip() == "":
            return self
        try:
            margin = int(raw)
        except ValueError:
            raise ValueError(f"{ORDER_MARGIN_ENV} must be an integer, got `{raw}`")
        return type(self).update(self, {"localization.order_margin": margin})

    def __str__(self):
        """Returns a human-readable string representation of the config."""
        import json

        return json.dumps(self.to_dict(), indent=4)
