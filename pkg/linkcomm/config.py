"""
User configuration for detector defaults, read from an INI file.
"""
import os
import configparser


CONFIG_DIR = os.path.join(os.path.expanduser("~"), ".config", "linkcomm")
CONFIG_PATH = os.environ.get(
    "LINKCOMM_CONFIG", os.path.join(CONFIG_DIR, "linkcomm.cfg")
)


class LinkcommConfig(configparser.ConfigParser):
    def make_default(self):
        self["detect"] = {
            "step_mode": "fixed",
            "step_cap": "100",
            "seed_trials": "1",
            "rng_seed": "0",
            "min_edges": "2",
            "mixing_tol": "1e-9",
        }
        self["spectral"] = {"tol": "1e-8", "max_iter": "", "fallback": "yes"}
        self["bench"] = {"instances": "20", "master_seed": "0"}

    def step_policy(self, **overrides):
        """Build a spectral.StepPolicy from the [detect] and [spectral] sections.

        Keyword args override individual fields.
        """
        from linkcomm.spectral import StepMode, StepPolicy

        spectral = self["spectral"]
        max_iter = spectral.get("max_iter", "")
        attrs = {
            "mode": StepMode[self["detect"]["step_mode"].upper()],
            "cap": self["detect"].getint("step_cap"),
            "tol": spectral.getfloat("tol"),
            "max_iter": int(max_iter) if max_iter else None,
            "fallback": spectral.getboolean("fallback"),
        }
        attrs.update(overrides)
        return StepPolicy(**attrs)

    def detector_config(self, **overrides):
        """Build a partition.DetectorConfig from the [detect] section.

        Keyword args override individual fields; `policy` may be passed
        to replace the StepPolicy built by step_policy().
        """
        from linkcomm.partition.types import DetectorConfig

        detect = self["detect"]
        attrs = {
            "policy": self.step_policy(),
            "rng_seed": detect.getint("rng_seed"),
            "seed_trials": detect.getint("seed_trials"),
            "min_edges_leaf": detect.getint("min_edges"),
            "mixing_tol": detect.getfloat("mixing_tol"),
        }
        attrs.update(overrides)
        return DetectorConfig(**attrs)

    def write_default(self, path=CONFIG_PATH):
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w") as configfile:
            self.write(configfile)


CONFIG = LinkcommConfig()
CONFIG.make_default()


# Values from an existing config file override the defaults
if os.path.exists(CONFIG_PATH):
    CONFIG.read(CONFIG_PATH)
