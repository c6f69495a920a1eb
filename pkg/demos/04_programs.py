"""Writing, checking and running .tqp programs."""
from anyonlang.lang import DiagnosticError, evaluate, format_program, parse, typecheck

SOURCE = """
// a Fibonacci qubit encoded in four tau anyons
model fibonacci;
config 4 of tau total 1;
gate x_ish = s2 s1^-1 s1^-1 s1^-1 s2;
apply s2;
measure edge 1;
apply x_ish^2;
emit unitary;
emit state;
"""

# %% parse, pretty-print, typecheck, evaluate
program = parse(SOURCE)
print(format_program(program))
typed = typecheck(program)
print("sector dimension:", typed.dim)
for emission in evaluate(typed):
    print(emission.kind, getattr(emission, "distribution", ""))

# %% errors come back as coded diagnostics with positions
for bad in ("model fibonacci config", "model fibonacci; config 4 of tau total 1; apply s4;",
            "model ising; config 2 of sigma total sigma;"):
    try:
        typecheck(parse(bad))
    except DiagnosticError as exc:
        for d in exc.diagnostics:
            print(d.render("demo.tqp"))
