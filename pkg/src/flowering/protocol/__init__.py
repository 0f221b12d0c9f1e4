from .core import (
    FinalCheckFailed,
    FoldMismatch,
    OpeningInvalid,
    ProverResult,
    Reject,
    VerifyResult,
    check_committed,
    commit_phase,
    interactive_run,
    prove,
    run_query_repetition,
    verify,
    verify_bytes,
)
from .merkle import EmptyLeaves, MerkleCommitment, merkle_commit, verify_path
from .params import ComplexityCounters, ParamsError, ProtocolParams
from .simulate import STRATEGIES, SoundnessEstimate, simulate_soundness, wilson_interval
from .transcript import RandomCoins, Transcript, partial_shuffle
from .walk import walk_distribution, weighted_law
from .wire import MalformedProof, Opening, Proof, decode_proof, encode_proof
