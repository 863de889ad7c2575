"""
Runnable script with hydra capabilities: evaluate, analyze and synthesize
special-function expansions and run the verification battery.

    python sgsf.py command=verify command.suite=casimir
    python sgsf.py command=eval command.family=zernike-r command.index="n=2,m=0" command.at="r=1.0"
"""
import os
import sys

import hydra

from utils.common import set_seeds


@hydra.main(config_path="./config", config_name="default")
def main(config):
    cwd = os.getcwd()
    config.logger.logdir.root = cwd
    print(f"\nLogging directory of this run:  {cwd}\n")
    set_seeds(config.seed)

    logger = hydra.utils.instantiate(config.logger, config, _recursive_=False)
    command = hydra.utils.instantiate(
        config.command,
        logger=logger,
        seed=config.seed,
        device=config.device,
        float_precision=config.float_precision,
        _recursive_=False,
    )
    logger.start_timer("command")
    code = command.run()
    elapsed = logger.stop_timer("command")
    if elapsed is not None:
        logger.log(f"Finished in {elapsed:.2f} s")
    logger.end()
    if code:
        sys.exit(code)


if __name__ == "__main__":
    main()
    sys.exit()
