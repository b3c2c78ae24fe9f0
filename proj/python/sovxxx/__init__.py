from ._core import (
    ChainParams,
    EigenRecord,
    SovError,
    all_suites,
    correspondence,
    ff_sigma_minus,
    ff_sigma_plus,
    ff_sigma_z,
    fixture_params,
    full_spectrum,
    gaudin_norm,
    hamiltonian_limit_check,
    izergin,
    make_params,
    monodromy_entry,
    near_homogeneous_params,
    pauli_hamiltonian,
    quantum_det_check,
    run,
    sample_generic_params,
    separate_state,
    sigma_minus,
    sigma_z,
    slavnov,
    sp_a_form,
    sp_b_form,
    sp_direct,
    sp_izergin_form,
    sp_with_eigenstate,
    transfer_antiperiodic,
    transfer_twisted,
)

__all__ = [name for name in dir() if not name.startswith("_")]
