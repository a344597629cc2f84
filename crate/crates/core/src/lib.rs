pub mod exactla;
pub mod quiver;
pub mod algebra;
pub mod modulation;
pub mod gpa;
pub mod natext;
pub mod reps;
