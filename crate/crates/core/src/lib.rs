pub mod decomp;
pub mod genus2;
pub mod groups;
pub mod oracle;
pub mod picard;
pub mod report;
