"""Linear-algebra tests for exactly-one and ordinary satisfiability."""
from .formula import Clause, CnfFormula, Literal, classify, emit_dimacs, parse_dimacs
from .laf import KernelOptions, KernelVerdict, kernel_check, linear_transform, relinearize
from .pipeline import PipelineOptions, SatVerdict, laf_sat_check
from .reduce import lift_witness, positivize, reduce_sat_to_eos, to_one_in_three, to_three_cnf

__version__ = "0.1.0"
