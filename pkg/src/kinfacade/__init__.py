"""Big Bang-Big Crunch optimization of a kinetic second-skin facade.

Submodules:

- :mod:`kinfacade.bbbc` -- the optimizer
- :mod:`kinfacade.benchmarks` -- sphere, Rastrigin, Rosenbrock
- :mod:`kinfacade.facade` -- module taxonomy, fold-angle genotypes, shading
- :mod:`kinfacade.solar` -- sun position and clear-sky irradiance
- :mod:`kinfacade.weather` -- EPW parsing and synthetic weather
- :mod:`kinfacade.energy` -- hourly cooling-load surrogate and OEC
- :mod:`kinfacade.config` / :mod:`kinfacade.study` -- the three-stage study
"""

__version__ = "0.1.0"

from .bbbc import BbbcConfig, Candidate, OptimizationTrace, SearchSpace, bang, crunch, optimize
from .energy import BuildingParams, EnergyReport, evaluate_oec, oec_total
from .facade import FacadeGenotype, FacadeLayout, ModuleType, decode, encode, genotype_dims
from .solar import SHIRAZ, SitePosition, sun_state
from .weather import HourlyWeather, WeatherSeries, parse_epw, read_epw, synthesize_clear_sky
from .config import StudyConfig, load_config
from .study import compare, run_baseline, run_kinetic, run_static
