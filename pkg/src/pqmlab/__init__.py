"""Quantum associative memory: simulation, resource accounting, classification.

Stores bit patterns in superposition, retrieves by Hamming-distance-weighted
acceptance, and compares the bit-level one-hot memory against the
feature-grouped label-encoded variant in qubits, gates and accuracy.
"""

from .circuits import (
    Algorithm,
    Circuit,
    Mode,
    RegisterLayout,
    accept_bit,
    depth,
    execute,
    histogram,
    make_layout,
    pipeline_circuit,
    retrieval_circuit,
    storage_circuit,
)
from .classifier import (
    AffinityResult,
    LabelAffinity,
    LabelDatabase,
    affinity,
    build_databases,
    classify,
    default_encoding,
    encode_target,
)
from .dataset import dumps_csv, load_csv, loads_csv, save_csv
from .errors import DatasetFormatError, DomainError, PqmError, ResourceError
from .model import (
    Alphabet,
    BitPattern,
    EncodingKind,
    EncodingScheme,
    LabeledDataset,
    Pattern,
    bit_fraction,
    decode,
    encode,
    hamming_bits,
    hamming_features,
    retrieval_distribution,
)
from .qasm import export_qasm
from .resources import (
    Convention,
    InstanceStats,
    ResourceReport,
    full_report,
    measurement_count,
    omega,
    pattern_bits,
    qubit_count,
    qubit_savings_percent,
    retrieval_gate_counts,
    storage_gate_counts,
)
from .statevector import (
    GateOp,
    MeasurementRecord,
    QuantumState,
    cs_entries,
    measure,
    new_state,
    probability,
    resolve_max_qubits,
)

__version__ = "0.1.0"

__all__ = [
    "Algorithm",
    "Alphabet",
    "AffinityResult",
    "BitPattern",
    "Circuit",
    "Convention",
    "DatasetFormatError",
    "DomainError",
    "EncodingKind",
    "EncodingScheme",
    "GateOp",
    "InstanceStats",
    "LabelAffinity",
    "LabelDatabase",
    "LabeledDataset",
    "MeasurementRecord",
    "Mode",
    "Pattern",
    "PqmError",
    "QuantumState",
    "RegisterLayout",
    "ResourceError",
    "ResourceReport",
    "accept_bit",
    "affinity",
    "bit_fraction",
    "build_databases",
    "classify",
    "cs_entries",
    "decode",
    "default_encoding",
    "depth",
    "dumps_csv",
    "encode",
    "encode_target",
    "execute",
    "export_qasm",
    "full_report",
    "hamming_bits",
    "hamming_features",
    "histogram",
    "load_csv",
    "loads_csv",
    "make_layout",
    "measure",
    "measurement_count",
    "new_state",
    "omega",
    "pattern_bits",
    "pipeline_circuit",
    "probability",
    "qubit_count",
    "qubit_savings_percent",
    "resolve_max_qubits",
    "retrieval_circuit",
    "retrieval_distribution",
    "retrieval_gate_counts",
    "save_csv",
    "storage_circuit",
    "storage_gate_counts",
    "__version__",
]
