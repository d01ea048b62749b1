//! Stable text renderings of the headline formulas, with the program
//! constants substituted either as letters or as concrete index expressions.

use std::fmt;

use thiserror::Error;

use crate::budget::digit_threshold;
use crate::compiler::CompiledEquation;
use crate::index::{digits_at_most, Index};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// The axiom-independent infimum with memory indexed by `2^i 3^j`.
    Star,
    /// The full sup/inf formula over the reals.
    Dagger,
    /// The bracket of `f_{A,B,C}` alone.
    FBody,
    /// The theorem display: `r = ...` with squared variables inside the
    /// paraboloid term.
    MainTheorem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Plain,
    Latex,
}

/// Renderings of the three program constants. For `Star` these play the roles
/// of `D`, `E`, `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constants {
    pub a: String,
    pub b: String,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderTarget {
    pub target: Target,
    pub style: Style,
    pub constants: Constants,
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error(
        "constant has more than {0} decimal digits; \
         pass it symbolically or raise DIO_DIGIT_BUDGET"
    )]
    TooLarge(u64),
}

impl Constants {
    /// The letters used by the paper displays.
    pub fn letters(target: Target) -> Constants {
        let (a, b, c) = match target {
            Target::Star => ("D", "E", "F"),
            _ => ("A", "B", "C"),
        };
        Constants {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    /// Concrete constants from a compiled program.
    pub fn from_program(prog: &CompiledEquation, style: Style) -> Result<Constants, RenderError> {
        Ok(Constants {
            a: index_rendering(&prog.a, style)?,
            b: index_rendering(&prog.b, style)?,
            c: index_rendering(&prog.c, style)?,
        })
    }
}

/// Render an index in the requested style. Numerals are never expanded past
/// the digit threshold; the symbolic grammar carries them instead.
pub fn index_rendering(idx: &Index, style: Style) -> Result<String, RenderError> {
    match idx {
        Index::Num(n) => {
            if digits_at_most(n, digit_threshold()) {
                Ok(n.to_string())
            } else {
                Err(RenderError::TooLarge(digit_threshold()))
            }
        }
        Index::Pow { i, j } => {
            let i = index_rendering(i, style)?;
            let j = index_rendering(j, style)?;
            Ok(match style {
                Style::Plain => format!("9+2^({i})*3^({j})"),
                Style::Latex => format!("9+2^{{{i}}}3^{{{j}}}"),
            })
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Target::Star => "star",
            Target::Dagger => "dagger",
            Target::FBody => "f",
            Target::MainTheorem => "main",
        };
        f.write_str(s)
    }
}

const STAR_PLAIN: &str = "\
inf_{n_0..n_@A@ in N} [
    (n_0 - 2)^2
  + (n_@B@ - n_@C@)^2
  + sum_{i,j=0}^{@B@} (n_{2^i*3^j} - n_i^n_j)^2
]
";

const STAR_LATEX: &str = "\
\\inf_{n_0,\\dots,n_{@A@} \\in \\mathbb{N}}
 \\left[
      (n_0-2)^2
      + (n_{@B@} - n_{@C@})^2
      + \\sum_{i,j = 0}^{@B@} (n_{2^i3^j} - n_i^{n_j})^2
 \\right]
 \\tag{$\\star$}
";

const DAGGER_PLAIN: &str = "\
sup_{x_0,x_1 in R} inf_{x_2 in R} sup_{x_3 in R} inf_{x_4 in R} sup_{m in N} inf_{n_0..n_@A@ in N} x_0^2 * [
    (n_0 - 2)^2 + (n_1 - m)^2
  + n_2 + (n_@B@ - n_@C@)^2
  + n_3 * sum_{k=0}^{4} (x_k - n_{k+5}/(1+n_4) + n_4)^2
  + sum_{i,j=0}^{@B@} (n_{9+2^i*3^j} - n_i^n_j)^2
]
";

const DAGGER_LATEX: &str = "\
\\sup_{x_0,x_1 \\in \\mathbb{R}} \\inf_{x_2 \\in \\mathbb{R}} \\sup_{x_3 \\in \\mathbb{R}}\\inf_{x_4 \\in \\mathbb{R}}\\sup_{m \\in \\mathbb{N}}\\inf_{n_0,\\dots,n_{@A@} \\in \\mathbb{N}} x^2_0 \\left[
    \\begin{matrix*}[l]
      \\phantom{+}(n_0 - 2)^2  +  (n_1-m)^2\\\\
      + n_2 + (n_{@B@} - n_{@C@})^2\\\\
      + n_3 \\sum_{k=0}^4 ( x_k - \\frac{n_{k+5}}{1+n_4} +n_4)^2 \\\\
      + \\sum_{i,j = 0}^{@B@} (n_{9+2^i3^j} - n_i^{n_j})^2
    \\end{matrix*}
    \\right] \\tag{$\\dagger$}
";

const FBODY_PLAIN: &str = "\
f_{@A@,@B@,@C@}(x_0..x_4, m, n_0..n_@A@) = [
    (n_0 - 2)^2 + (n_1 - m)^2
  + n_2 + (n_@B@ - n_@C@)^2
  + n_3 * sum_{k=0}^{4} (x_k - n_{k+5}/(1+n_4) + n_4)^2
  + sum_{i,j=0}^{@B@} (n_{9+2^i*3^j} - n_i^n_j)^2
]
";

const FBODY_LATEX: &str = "\
f_{@A@,@B@,@C@}(x_0,\\dots,x_4,m,n_0,\\dots,n_{@A@}) =   \\left[
    \\begin{matrix*}[l]
      \\phantom{+}(n_0 - 2)^2  +  (n_1-m)^2  \\\\
      + n_2 + (n_{@B@} - n_{@C@})^2 \\\\
      + n_3 \\sum_{k=0}^4 ( x_k - \\frac{n_{k+5}}{1+n_4} +n_4)^2 \\\\
      + \\sum_{i,j = 0}^{@B@} (n_{9+2^i3^j} - n_i^{n_j})^2
    \\end{matrix*}
    \\right].
";

const MAIN_PLAIN: &str = "\
r = sup_{x_0,x_1 in R} inf_{x_2 in R} sup_{x_3 in R} inf_{x_4 in R} sup_{m in N} inf_{n_0..n_@A@ in N} x_0^2 * [
    (n_0 - 2)^2 + (n_1 - m)^2
  + n_2 + (n_@B@ - n_@C@)^2
  + n_3 * sum_{k=0}^{4} (x_k^2 - n_{k+5}/(1+n_4) + n_4)^2
  + sum_{i,j=0}^{@B@} (n_{9+2^i*3^j} - n_i^n_j)^2
]
";

const MAIN_LATEX: &str = "\
r =
  \\sup_{x_0,x_1 \\in \\mathbb{R}} \\inf_{x_2 \\in \\mathbb{R}} \\sup_{x_3 \\in \\mathbb{R}}\\inf_{x_4 \\in \\mathbb{R}}\\sup_{m \\in \\mathbb{N}}\\inf_{n_0,\\dots,n_{@A@} \\in \\mathbb{N}} x^2_0 \\left[
    \\begin{matrix*}[l]
      \\phantom{+}(n_0 - 2)^2  +  (n_1-m)^2  \\\\
      + n_2 + (n_{@B@} - n_{@C@})^2 \\\\
      + n_3 \\sum_{k=0}^4 ( x_k^2 - \\frac{n_{k+5}}{1+n_4}  + n_4)^2 \\\\
      + \\sum_{i,j = 0}^{@B@} (n_{9+2^i3^j} - n_i^{n_j})^2
    \\end{matrix*}
    \\right].
";

/// Pure, golden-file-stable rendering.
pub fn render(t: &RenderTarget) -> String {
    let template = match (t.target, t.style) {
        (Target::Star, Style::Plain) => STAR_PLAIN,
        (Target::Star, Style::Latex) => STAR_LATEX,
        (Target::Dagger, Style::Plain) => DAGGER_PLAIN,
        (Target::Dagger, Style::Latex) => DAGGER_LATEX,
        (Target::FBody, Style::Plain) => FBODY_PLAIN,
        (Target::FBody, Style::Latex) => FBODY_LATEX,
        (Target::MainTheorem, Style::Plain) => MAIN_PLAIN,
        (Target::MainTheorem, Style::Latex) => MAIN_LATEX,
    };
    template
        .replace("@A@", &t.constants.a)
        .replace("@B@", &t.constants.b)
        .replace("@C@", &t.constants.c)
}
