from pimlang.sim.closed_form import closed_form_means
from pimlang.sim.engines import DirectEngine, GeneratedEngine, compile_model, diff
from pimlang.sim.interpreter import Reaction, SimState, load, simulate, step
from pimlang.sim.replicates import run_replicates
from pimlang.sim.rules import RuleSimulator, run
from pimlang.sim.trace import read_csv, sample_grid, summarize, write_csv, z_scores
