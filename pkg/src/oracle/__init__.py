# Independent brute-force verifiers
