# CV Entanglement Toolkit test suite
