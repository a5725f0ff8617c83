"""Extension graph and hyperplane combinatorics of the universal cover."""
