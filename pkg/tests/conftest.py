# keeps this directory on sys.path so tests can import helpers / qasm_ref
