"""Map sources and first integrals used by the golden suite, the tests and the examples."""

MAPS = {
    "planar_cubic": "vars x, y; f = (x + y^2 - x*y, (x^2 + x*y + 1)/(x^2 - 3*y + 1))",
    "xy_family": "vars x, y; params a; f = (x*y, (a + (2 - a)*x)*y/(1 + x*y))",
    "todd": "vars x, y, z; params a; f = (y, z, (a + y + z)/x)",
    "lyness_bc": "vars x, y; params b, c; f = (y, -b*x + c/y)",
    "lyness": "vars x, y; params c; f = (y, -x + c/y)",
    "linear_shift": "vars x, y; params b; f = (y, -b*x)",
    "four_dim": "vars x, y, z, t; params a, b, c; f = (z, t, (a*z + b*t + c)/x, (a*z + b*t + c)/y)",
    "f1": "vars x, y; f = (y, 1/(x*y^2))",
    "f2": "vars x, y; f = (y, y^2/x)",
    "f3": "vars x, y; f = (y, x)",
    "f4": "vars x, y; f = (y, 1/(x*y))",
    "f5": "vars x, y; f = (y, 1/x)",
    "f6": "vars x, y; f = (y, y/x)",
    "rotation": "vars x, y; f = (y, -x)",
    "diag235": "vars x, y, z; f = (2*x, 3*y, 5*z)",
    "doubling": "vars x, y; f = (y, 2*x)",
}

INTEGRALS = {
    "lyness": ["x^2*y^2 - c*x*y"],
    "f6": [
        "x + 1/x + y + 1/y + x/y + y/x",
        "x*y + 1/(x*y) + x^2/y + y/x^2 + x/y^2 + y^2/x",
    ],
    "todd": [
        "(x + 1)*(y + 1)*(z + 1)*(a + x + y + z)/(x*y*z)",
        "(1 + x + y)*(1 + y + z)*(a + x + y + z + x*z)/(x*y*z)",
    ],
    "four_dim": ["(x*y + a*y + b*x)*(z*t + a*t + b*z)*(a*x + a*z + b*t + b*y + c)/(x*y*z*t)"],
}

PERIODS = {"f3": 2, "f4": 3, "f5": 4, "f6": 6}
