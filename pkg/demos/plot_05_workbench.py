"""
Scripting the workbench
=======================

The same computations are available as a small line based script language.
Each command can carry an expectation, and the report records a verdict per
command plus an exit code for the whole script.
"""

from gradedbass.workbench import RunOptions, catalog, run_text

script = """
ring R = k[x,y]/(x^2)
module k over R = residue
module N over R = quotient (y)
module M over R = maxideal N
map inc : M -> N = inclusion
betti k 4 expect 1,2,2,2,2
bass M expect 1,2,2,2,2,2,2
verify closed-formula inc
"""

report = run_text(script, RunOptions(bound=6))
print(report.to_text())

# Every catalog entry is a script that runs to exit code 0.
print(catalog())
print(run_text(catalog("stable-x2")).exit_code)
