from .ClaimVerifier import ClaimVerifier
