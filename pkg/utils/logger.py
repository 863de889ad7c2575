from pathlib import Path
import time

import pandas as pd
from omegaconf import OmegaConf


class Logger:
    """
    Owns the run's log directory and, when online, the wandb run. Checks and
    report tables of the verification suites are pushed through it; offline,
    every online method returns early.
    """

    def __init__(
        self,
        config,
        do: dict,
        logdir: dict,
        project_name: str = "sgsf",
        tags: list = None,
        lightweight: bool = False,
        progress: bool = True,
        debug: bool = False,
        run_name: str = None,
        **kwargs,
    ):
        self.config = config
        self.do = do
        self.lightweight = lightweight
        self.progress = progress
        self.debug = debug
        self.logdir = Path(logdir.root)
        if self.logdir.exists() and not logdir.overwrite and any(self.logdir.iterdir()):
            raise FileExistsError(
                f"Log directory {self.logdir} is not empty and overwrite is disabled"
            )
        self.logdir.mkdir(parents=True, exist_ok=True)
        self.data_dir = self.logdir / logdir.data
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.times = {}
        if self.do.online:
            import wandb

            self.wandb = wandb
            wandb_config = OmegaConf.to_container(config, resolve=True, throw_on_missing=False)
            self.run = self.wandb.init(
                config=wandb_config,
                project=project_name,
                name=run_name,
                tags=list(tags) if tags is not None else None,
            )
        else:
            self.wandb = None
            self.run = None

    def log(self, message: str):
        if self.progress:
            print(message)

    def log_debug(self, message: str):
        if self.debug:
            print(message)

    def log_metric(self, key: str, value, step: int = None):
        if not self.do.online:
            return
        self.wandb.log({key: value}, step=step)

    def log_metrics(self, metrics: dict, step: int = None):
        if not self.do.online:
            return
        self.wandb.log(metrics, step=step)

    def log_check(self, check, step: int = None):
        """
        Residual, tolerance and pass flag of one check.
        """
        self.log_debug(
            f"{'PASS' if check.passed else 'FAIL'}  {check.name}  "
            f"residual={check.residual:.3e}  tolerance={check.tolerance:.1e}"
        )
        if not self.do.online:
            return
        self.log_metrics(
            {
                f"{check.name}/residual": check.residual,
                f"{check.name}/tolerance": check.tolerance,
                f"{check.name}/pass": int(check.passed),
            },
            step=step,
        )

    def log_table(self, key: str, table: pd.DataFrame):
        if not self.do.online:
            return
        self.wandb.log({key: self.wandb.Table(dataframe=table)})

    def start_timer(self, key: str):
        if not self.do.times:
            return
        self.times[key] = time.perf_counter()

    def stop_timer(self, key: str):
        """
        Elapsed seconds since start_timer(key), or None when timing is off.
        """
        if not self.do.times or key not in self.times:
            return None
        elapsed = time.perf_counter() - self.times.pop(key)
        self.log_metric(f"times/{key}", elapsed)
        return elapsed

    def end(self):
        if not self.do.online:
            return
        self.wandb.finish()
