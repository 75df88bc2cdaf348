"""bellsim: statevector emulation of variational Bell-correlation experiments.

Subpackages:
  qsim     exact simulation substrate (states, gates, Pauli sums, sampling)
  bell     Bell expressions, operators, classical/k-nonlocal bounds, depth
  vqc      ansatz builders, parameter-shift gradients, Adam, training loops
  measure  parity / multiple-quantum-coherence pipelines, readout error model
  cli      command-line runner (bounds / train / measure / depth / verify)
"""

__version__ = "0.1.0"
