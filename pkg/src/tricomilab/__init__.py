"""Numerical laboratory for the semilinear generalized Tricomi equation.

Library layout:

* ``specfun``     -- confluent hypergeometric kernel and radial eigenfunction
* ``tricomi_ode`` -- fundamental system of y'' = lambda^2 t^m y and propagators
* ``testfun``     -- weighted test-function integrals and envelope checks
* ``exponents``   -- critical-exponent algebra and lifespan laws
* ``iteration``   -- subcritical and critical iteration engines
* ``pde_solver``  -- radial finite-difference blow-up simulations
* ``cli``         -- command-line front end
"""

__version__ = "0.1.0"
