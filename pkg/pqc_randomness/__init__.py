from pqc_randomness._logger import logger
from pqc_randomness.circuit import Ansatz, CircuitSpec, GateSequence, Topology, compile_circuit, run_circuit, table_counts
from pqc_randomness.entanglement import cue_mean, cue_std_q1, ensemble_stats, reduced_purity, scott_q
from pqc_randomness.expressibility import expressibility, haar_fidelity_moment, kl_expressibility, tdesign_deviation
from pqc_randomness.oracles import HaarSampler, brute_force_reduced_density
from pqc_randomness.sampling import ParameterSampler
from pqc_randomness.state import StateVector, apply_cnot, apply_rotation, fidelity, zero_state
