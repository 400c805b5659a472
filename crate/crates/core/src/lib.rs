pub mod congruences;
pub mod identities;
pub mod oracle;
pub mod qexpr;
pub mod report;
pub mod series;
